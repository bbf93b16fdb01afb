"""Tame base change of degree ``n`` followed by normalization and minimal resolution.

The output of :func:`transform` is the dual graph of the minimal
desingularization of the normalized pullback.  Above a chain component the
number of copies is forced by the local data; above a principal component it
is not visible from the dual graph and is taken from a :class:`SplittingPlan`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .errors import (
    DisconnectedResult,
    EmptyResult,
    InconsistentChain,
    InconsistentSplitting,
    InvalidGraph,
    TameAssumptionViolated,
    WildDegree,
)
from .fibergraph import Component, FiberGraph, genus, is_connected, require_valid, validate
from .localmodel import node_params, resolve_node
from .saito import is_principal


@dataclass(frozen=True)
class SplittingPlan:
    """Number of connected components above each principal component (default 1)."""

    overrides: dict[str, int] = field(default_factory=dict)

    def copies(self, cid: str) -> int:
        return self.overrides.get(cid, 1)

    def as_dict(self) -> dict[str, int]:
        return dict(sorted(self.overrides.items()))

    def __hash__(self):
        return hash(tuple(sorted(self.overrides.items())))


@dataclass(frozen=True)
class CoverData:
    base_id: str
    copies: int
    copy_mult: int
    copy_genus: int
    copy_degree: int


def divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def gcd3(a: int, b: int, c: int) -> int:
    return gcd(gcd(a, b), c)


def chain_split_count(mults: list[int], n: int) -> int:
    """Common value of ``gcd(a_i, a_{i+1}, n)`` along a chain with its outer components."""
    ds = {gcd3(x, y, n) for x, y in zip(mults, mults[1:])}
    if not ds:
        return gcd(mults[0], n) if mults else 1
    if len(ds) > 1:
        raise InconsistentChain(f"gcd(a_i, a_(i+1), n) is not constant along {mults}: {sorted(ds)}")
    return ds.pop()


def cover_genus(genus_f: int, mult: int, n: int, c: int, node_data: list[tuple[int, int]]) -> int:
    """Genus of each of the ``c`` copies above a component, by Riemann-Hurwitz.

    ``node_data`` holds the two branch multiplicities at every node on the component.
    """
    big = gcd(mult, n)
    if c < 1 or big % c:
        raise InconsistentSplitting(f"{c} copies do not divide gcd(mult, n) = {big}")
    degree = big // c
    total = degree * (2 * genus_f - 2)
    for a_x, b_x in node_data:
        d_x = gcd3(a_x, b_x, n)
        if d_x % c:
            raise InconsistentSplitting(f"{c} copies do not divide the {d_x} points above a node")
        total += (d_x // c) * (big // d_x - 1)
    if total % 2 or total + 2 < 0:
        raise InconsistentSplitting(f"Riemann-Hurwitz gives 2g'-2 = {total}")
    return (total + 2) // 2


def _check_degree(g: FiberGraph, n: int):
    if n < 1:
        raise InvalidGraph("base-change degree must be positive")
    p = g.residue_char
    if p and n % p == 0:
        raise WildDegree(f"degree {n} is divisible by the residue characteristic {p}")
    if p:
        for i, j in g.edges:
            if g[i].mult % p == 0 and g[j].mult % p == 0:
                raise TameAssumptionViolated(f"edge {i}-{j}: both multiplicities divisible by p={p}")


def _forced_copies(g: FiberGraph, cid: str, n: int) -> int:
    m = g[cid].mult
    ds = {gcd3(m, g[nb].mult, n) for nb in g.neighbors(cid)}
    if not ds:
        return gcd(m, n)
    if len(ds) > 1:
        raise InconsistentChain(f"chain component {cid} has unequal point counts {sorted(ds)}")
    return ds.pop()


def cover_data(g: FiberGraph, n: int, plan: SplittingPlan | None = None) -> dict[str, CoverData]:
    plan = plan or SplittingPlan()
    out = {}
    for comp in g.components:
        cid = comp.id
        if is_principal(g, cid):
            c = plan.copies(cid)
        else:
            c = _forced_copies(g, cid, n)
            if cid in plan.overrides and plan.overrides[cid] != c:
                raise InconsistentSplitting(f"{cid} is a chain component; its copy count is forced to {c}")
        node_data = [(comp.mult, g[nb].mult) for nb in g.neighbors(cid)]
        gen = cover_genus(comp.genus, comp.mult, n, c, node_data)
        big = gcd(comp.mult, n)
        out[cid] = CoverData(cid, c, comp.mult // big, gen, big // c)
    return out


def _copy_id(cid: str, k: int, copies: int) -> str:
    return cid if copies == 1 else f"{cid}~{k}"


def transform(g: FiberGraph, n: int, plan: SplittingPlan | None = None) -> FiberGraph:
    """Fiber of the minimal desingularization after tame base change of degree ``n``."""
    require_valid(g)
    _check_degree(g, n)
    covers = cover_data(g, n, plan)
    comps = []
    for comp in g.components:
        cd = covers[comp.id]
        comps.extend(
            Component(_copy_id(comp.id, k, cd.copies), cd.copy_genus, cd.copy_mult) for k in range(cd.copies)
        )
    edges = []
    for idx, (ia, ib) in enumerate(g.edges):
        a, b = g[ia].mult, g[ib].mult
        params = node_params(a, b, n, g.residue_char)
        ca, cb = covers[ia].copies, covers[ib].copies
        chain = None if params.regular else resolve_node(params, (params.a_dd, params.b_dd))
        for k in range(params.point_count):
            side_a = _copy_id(ia, k % ca, ca)
            side_b = _copy_id(ib, k % cb, cb)
            if chain is None:
                edges.append((side_a, side_b))
                continue
            prev = side_b
            for j, (_, mu) in enumerate(chain.entries, 1):
                xid = f"x{idx}.{k}.{j}"
                comps.append(Component(xid, 0, mu))
                edges.append((prev, xid))
                prev = xid
            edges.append((prev, side_a))
    out = FiberGraph(tuple(comps), tuple(edges), g.residue_char)
    if not is_connected(out):
        raise DisconnectedResult("the splitting plan produces a disconnected fiber")
    report = validate(out)
    if not report.ok:
        raise InconsistentSplitting("; ".join(report.problems))
    if report.genus != genus(g):
        raise InconsistentSplitting(f"genus changed from {genus(g)} to {report.genus}")
    return out


def candidate_copies(g: FiberGraph, cid: str, n: int) -> list[int]:
    m = g[cid].mult
    bound = gcd(m, n)
    for nb in g.neighbors(cid):
        bound = gcd(bound, gcd3(m, g[nb].mult, n))
    return divisors(bound)


def search_splittings(g: FiberGraph, n: int) -> list[tuple[SplittingPlan, FiberGraph]]:
    """All splitting plans over principal components that give a consistent fiber."""
    require_valid(g)
    _check_degree(g, n)
    principal = [cid for cid in g.ids if is_principal(g, cid)]
    choices = [candidate_copies(g, cid, n) for cid in principal]
    results = []
    for combo in itertools.product(*choices):
        plan = SplittingPlan({cid: c for cid, c in zip(principal, combo) if c != 1})
        try:
            results.append((plan, transform(g, n, plan)))
        except (InconsistentSplitting, DisconnectedResult):
            continue
    if not results:
        raise EmptyResult("no splitting plan is consistent; the input graph cannot occur")
    return results
