"""Weighted dual graphs of special fibers.

A :class:`FiberGraph` records the components of an SNC special fiber
(genus and multiplicity) and one edge per transverse intersection point.
Self-intersections are never stored; they follow from ``C . X_k = 0``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import networkx as nx

from .errors import (
    InvalidGraph,
    NonIntegralGenus,
    NonIntegralSelfIntersection,
    UndefinedSelfIntersection,
)

Edge = tuple[str, str]


def _norm_edge(e) -> Edge:
    i, j = e
    i, j = str(i), str(j)
    return (i, j) if i <= j else (j, i)


@dataclass(frozen=True)
class Component:
    id: str
    genus: int = 0
    mult: int = 1

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise InvalidGraph(f"component {self.id!r}: genus must be a non-negative integer")
        if not isinstance(self.mult, int) or self.mult < 1:
            raise InvalidGraph(f"component {self.id!r}: multiplicity must be a positive integer")


@dataclass(frozen=True)
class FiberGraph:
    """Dual graph of a special fiber.

    ``nodal`` marks the transient graphs produced by contracting a loop
    chain, the only place a component may meet itself.
    """

    components: tuple[Component, ...]
    edges: tuple[Edge, ...] = ()
    residue_char: int = 0
    nodal: bool = False
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        comps = tuple(self.components)
        edges = tuple(sorted(_norm_edge(e) for e in self.edges))
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "edges", edges)
        if self.residue_char < 0:
            raise InvalidGraph("residue_char must be 0 or a prime")
        index = {}
        for c in comps:
            if c.id in index:
                raise InvalidGraph(f"duplicate component id {c.id!r}")
            index[c.id] = c
        object.__setattr__(self, "_index", index)
        for i, j in edges:
            if i not in index or j not in index:
                raise InvalidGraph(f"edge ({i!r}, {j!r}) references an unknown component")
            if i == j and not self.nodal:
                raise InvalidGraph(f"self-loop at {i!r}: SNC components never meet themselves")

    @classmethod
    def build(cls, components: Iterable, edges: Iterable = (), residue_char: int = 0, nodal=False):
        """Convenience constructor accepting ``(id, genus, mult)`` triples."""
        comps = [c if isinstance(c, Component) else Component(*c) for c in components]
        return cls(tuple(comps), tuple(edges), residue_char, nodal)

    def __getitem__(self, cid: str) -> Component:
        try:
            return self._index[cid]
        except KeyError:
            raise InvalidGraph(f"no component with id {cid!r}") from None

    def __contains__(self, cid) -> bool:
        return cid in self._index

    @property
    def ids(self) -> list[str]:
        return [c.id for c in self.components]

    def neighbors(self, cid: str) -> list[str]:
        """Other endpoints of the edges at ``cid``, repeated for parallel edges."""
        out = []
        for i, j in self.edges:
            if i == j:
                continue
            if i == cid:
                out.append(j)
            elif j == cid:
                out.append(i)
        return out

    def loops(self, cid: str) -> int:
        return sum(1 for i, j in self.edges if i == j == cid)

    def degree(self, cid: str) -> int:
        """Number of contact points; a self-loop contributes two branches."""
        return len(self.neighbors(cid)) + 2 * self.loops(cid)

    def replace(self, components=None, edges=None, nodal=None) -> "FiberGraph":
        return FiberGraph(
            tuple(self.components if components is None else components),
            tuple(self.edges if edges is None else edges),
            self.residue_char,
            self.nodal if nodal is None else nodal,
        )

    def fresh_id(self, prefix: str) -> str:
        k = 0
        while f"{prefix}{k}" in self._index:
            k += 1
        return f"{prefix}{k}"


@dataclass(frozen=True)
class ReducedGraph:
    """Dual graph of a reduced nodal curve; self-loops are nodes of a component."""

    components: tuple[tuple[str, int], ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        comps = tuple((str(i), int(gen)) for i, gen in self.components)
        edges = tuple(sorted(_norm_edge(e) for e in self.edges))
        ids = {i for i, _ in comps}
        if len(ids) != len(comps):
            raise InvalidGraph("duplicate component id in reduced graph")
        for i, j in edges:
            if i not in ids or j not in ids:
                raise InvalidGraph(f"edge ({i!r}, {j!r}) references an unknown component")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "edges", edges)

    @property
    def ids(self) -> list[str]:
        return [i for i, _ in self.components]

    def genus_of(self, cid: str) -> int:
        return dict(self.components)[cid]

    def valence(self, cid: str) -> int:
        return sum((i == cid) + (j == cid) for i, j in self.edges)


@dataclass
class ValidationReport:
    connected: bool
    integral: bool
    tame_edges: bool
    genus: int | None
    genus_at_least_two: bool
    problems: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Structural validity; ``genus_at_least_two`` is only required by the pipeline."""
        return self.connected and self.integral and self.tame_edges and self.genus is not None

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "connected": self.connected,
            "integral": self.integral,
            "tame_edges": self.tame_edges,
            "genus": self.genus,
            "genus_at_least_two": self.genus_at_least_two,
            "problems": list(self.problems),
            "warnings": list(self.warnings),
        }


def is_connected(g: FiberGraph | ReducedGraph) -> bool:
    ids = g.ids
    if not ids:
        return False
    adj = {i: set() for i in ids}
    for i, j in g.edges:
        adj[i].add(j)
        adj[j].add(i)
    seen = {ids[0]}
    todo = deque([ids[0]])
    while todo:
        for nb in adj[todo.popleft()]:
            if nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return len(seen) == len(ids)


def _neighbor_sum(g: FiberGraph, cid: str) -> int:
    return sum(g[nb].mult for nb in g.neighbors(cid))


def self_intersection(g: FiberGraph, c: str) -> int:
    """Self-intersection of ``c`` forced by ``C . X_k = 0``."""
    comp = g[c]
    if len(g.components) < 2:
        raise UndefinedSelfIntersection("a one-component fiber has self-intersection 0")
    q, rem = divmod(_neighbor_sum(g, c), comp.mult)
    if rem:
        raise NonIntegralSelfIntersection(
            f"mult({c})={comp.mult} does not divide the sum of neighbor multiplicities"
        )
    return -q


def _self_int_or_zero(g: FiberGraph, c: str) -> int:
    return 0 if len(g.components) < 2 else self_intersection(g, c)


def genus(g: FiberGraph) -> int:
    """Arithmetic genus of the fiber, by adjunction.

    A self-loop raises the arithmetic genus of its component by one.
    """
    total = Fraction(0)
    for comp in g.components:
        pa = comp.genus + g.loops(comp.id)
        total += comp.mult * (2 * pa - 2 - _self_int_or_zero(g, comp.id))
    result = 1 + total / 2
    if result.denominator != 1 or result < 0:
        raise NonIntegralGenus(f"adjunction gives genus {result}, not a non-negative integer")
    return int(result)


def reduced_pa(g: ReducedGraph) -> int:
    return sum(gen for _, gen in g.components) + len(g.edges) - len(g.components) + 1


def validate(g: FiberGraph) -> ValidationReport:
    problems = []
    warnings = []
    connected = is_connected(g)
    if not connected:
        problems.append("graph is not connected")

    integral = True
    if len(g.components) > 1:
        for comp in g.components:
            if _neighbor_sum(g, comp.id) % comp.mult:
                integral = False
                problems.append(f"self-intersection of {comp.id} is not an integer")

    p = g.residue_char
    tame = True
    if p:
        for i, j in g.edges:
            if g[i].mult % p == 0 and g[j].mult % p == 0:
                tame = False
                problems.append(f"edge {i}-{j}: both multiplicities divisible by p={p}")

    gen = None
    if integral:
        try:
            gen = genus(g)
        except NonIntegralGenus as exc:
            problems.append(str(exc))

    if integral and len(g.components) > 1:
        for comp in g.components:
            if comp.genus == 0 and g.degree(comp.id) <= 2 and self_intersection(g, comp.id) == -1:
                warnings.append(
                    f"{comp.id} is a rational (-1)-curve with <= 2 contacts; model may not be minimal"
                )

    return ValidationReport(
        connected=connected,
        integral=integral,
        tame_edges=tame,
        genus=gen,
        genus_at_least_two=gen is not None and gen >= 2,
        problems=problems,
        warnings=warnings,
    )


def require_valid(g: FiberGraph) -> ValidationReport:
    report = validate(g)
    if not report.ok:
        raise InvalidGraph("; ".join(report.problems))
    return report


def blow_up_edge(g: FiberGraph, e: Edge) -> FiberGraph:
    """Blow up the intersection point ``e``; the new component has mult ``a + b``."""
    e = _norm_edge(e)
    edges = list(g.edges)
    try:
        edges.remove(e)
    except ValueError:
        raise InvalidGraph(f"{e} is not an edge") from None
    a, b = e
    x = g.fresh_id("X")
    new = Component(x, 0, g[a].mult + g[b].mult)
    return g.replace(components=g.components + (new,), edges=edges + [(x, a), (x, b)])


def blow_up_point(g: FiberGraph, c: str) -> FiberGraph:
    """Blow up a point of ``c`` lying on no other component."""
    x = g.fresh_id("X")
    new = Component(x, 0, g[c].mult)
    return g.replace(components=g.components + (new,), edges=g.edges + ((x, c),))


def to_networkx(g: FiberGraph | ReducedGraph) -> nx.MultiGraph:
    G = nx.MultiGraph()
    if isinstance(g, FiberGraph):
        for c in g.components:
            G.add_node(c.id, genus=c.genus, mult=c.mult)
    else:
        for cid, gen in g.components:
            G.add_node(cid, genus=gen, mult=1)
    G.add_edges_from(g.edges)
    return G


def _signature(g) -> tuple:
    G = to_networkx(g)
    return tuple(
        sorted(Counter((d["genus"], d["mult"], G.degree(v)) for v, d in G.nodes(data=True)).items())
    )


def isomorphic(g1: FiberGraph | ReducedGraph, g2: FiberGraph | ReducedGraph) -> bool:
    """Isomorphism of weighted multigraphs, matching genus and multiplicity."""
    if _signature(g1) != _signature(g2) or len(g1.edges) != len(g2.edges):
        return False
    return nx.is_isomorphic(
        to_networkx(g1),
        to_networkx(g2),
        node_match=lambda x, y: x["genus"] == y["genus"] and x["mult"] == y["mult"],
    )
