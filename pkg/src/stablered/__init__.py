"""Stable reduction of curves with tame SNC models, computed on weighted dual graphs."""

from .basechange import SplittingPlan, chain_split_count, cover_genus, search_splittings, transform
from .contract import contract_chains, contract_component, to_stable
from .fibergraph import (
    Component,
    FiberGraph,
    ReducedGraph,
    blow_up_edge,
    blow_up_point,
    genus,
    isomorphic,
    reduced_pa,
    self_intersection,
    validate,
)
from .localmodel import chain_multiplicities, jung_hirzebruch, node_params, one_branch, resolve_node
from .pipeline import probe_minimality, run
from .saito import is_principal, minimal_degree, saito_check

__all__ = [
    "Component",
    "FiberGraph",
    "ReducedGraph",
    "SplittingPlan",
    "blow_up_edge",
    "blow_up_point",
    "chain_multiplicities",
    "chain_split_count",
    "contract_chains",
    "contract_component",
    "cover_genus",
    "genus",
    "is_principal",
    "isomorphic",
    "jung_hirzebruch",
    "minimal_degree",
    "node_params",
    "one_branch",
    "probe_minimality",
    "reduced_pa",
    "resolve_node",
    "run",
    "saito_check",
    "search_splittings",
    "self_intersection",
    "to_stable",
    "transform",
    "validate",
]
