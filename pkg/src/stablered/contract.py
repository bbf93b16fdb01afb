"""Blow-downs: non-reduced chain components first, then the stable contraction."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GenusTooSmall, NotContractible, PreconditionViolated
from .fibergraph import FiberGraph, ReducedGraph, genus, reduced_pa, self_intersection


@dataclass
class ContractionTrace:
    steps: list[tuple[str, int, int]] = field(default_factory=list)

    def as_list(self) -> list[dict]:
        return [{"id": c, "mult": m, "self_intersection": s} for c, m, s in self.steps]


def contract_component(g: FiberGraph, c: str) -> FiberGraph:
    """Blow down the rational (-1)-curve ``c``.

    If both contacts of ``c`` lie on the same component the result has a
    self-loop and is marked nodal.
    """
    comp = g[c]
    nbs = g.neighbors(c)
    if comp.genus != 0:
        raise NotContractible(f"{c} has genus {comp.genus}")
    if g.loops(c) or len(nbs) not in (1, 2):
        raise NotContractible(f"{c} meets the rest of the fiber in {g.degree(c)} points")
    s = self_intersection(g, c)
    if s != -1:
        raise NotContractible(f"{c} has self-intersection {s}, not -1")
    edges = list(g.edges)
    for nb in nbs:
        edges.remove(tuple(sorted((c, nb))))
    nodal = g.nodal
    if len(nbs) == 2:
        edges.append((nbs[0], nbs[1]))
        nodal = nodal or nbs[0] == nbs[1]
    comps = [x for x in g.components if x.id != c]
    return g.replace(components=comps, edges=edges, nodal=nodal)


def _runs(g: FiberGraph, members: set[str]) -> list[set[str]]:
    runs = []
    seen = set()
    for start in sorted(members):
        if start in seen:
            continue
        run = {start}
        todo = [start]
        while todo:
            for nb in g.neighbors(todo.pop()):
                if nb in members and nb not in run:
                    run.add(nb)
                    todo.append(nb)
        seen |= run
        runs.append(run)
    return runs


def check_contractible(g: FiberGraph) -> None:
    """Every non-reduced component must sit inside a chain whose outer components are reduced."""
    heavy = {c.id for c in g.components if c.mult > 1}
    for cid in sorted(heavy):
        comp = g[cid]
        if comp.genus != 0 or g.loops(cid) or len(g.neighbors(cid)) != 2:
            raise PreconditionViolated(
                f"non-reduced component {cid} (g={comp.genus}, m={comp.mult}) is not a chain member"
            )
    for run in _runs(g, heavy):
        if all(nb in run for cid in run for nb in g.neighbors(cid)):
            raise PreconditionViolated(f"non-reduced components {sorted(run)} form a closed loop")


def contract_chains(g: FiberGraph) -> tuple[FiberGraph, ContractionTrace]:
    """Contract non-reduced chain components, largest multiplicity first."""
    trace = ContractionTrace()
    while True:
        check_contractible(g)
        heavy = [c for c in g.components if c.mult > 1]
        if not heavy:
            return g, trace
        top = max(c.mult for c in heavy)
        pick = min(c.id for c in heavy if c.mult == top)
        nb_mults = [g[nb].mult for nb in g.neighbors(pick)]
        if any(m >= top for m in nb_mults):
            raise PreconditionViolated(f"{pick} (m={top}) does not exceed its neighbors {nb_mults}")
        s = self_intersection(g, pick)
        if s != -1:
            raise PreconditionViolated(f"maximal component {pick} has self-intersection {s}")
        trace.steps.append((pick, top, s))
        g = contract_component(g, pick)


def to_reduced(g: FiberGraph) -> ReducedGraph:
    if any(c.mult != 1 for c in g.components):
        raise PreconditionViolated("stable contraction needs a reduced fiber")
    return ReducedGraph(tuple((c.id, c.genus) for c in g.components), g.edges)


def stabilize(r: ReducedGraph) -> ReducedGraph:
    """Remove rational vertices of valence <= 2 until none is left."""
    pa = reduced_pa(r)
    while True:
        target = None
        for cid, gen in sorted(r.components):
            if gen == 0 and r.valence(cid) <= 2:
                target = cid
                break
        if target is None:
            return r
        edges = list(r.edges)
        incident = [e for e in edges if target in e]
        for e in incident:
            edges.remove(e)
        if len(incident) == 2:
            ends = [i if j == target else j for i, j in incident]
            edges.append((ends[0], ends[1]))
        elif incident and incident[0] == (target, target):
            raise GenusTooSmall("the fiber is a single rational nodal curve")
        comps = [c for c in r.components if c[0] != target]
        if not comps:
            raise GenusTooSmall("nothing left after stable contraction")
        r = ReducedGraph(tuple(comps), tuple(edges))
        assert reduced_pa(r) == pa, "stable contraction changed p_a"


def to_stable(g: FiberGraph) -> ReducedGraph:
    if genus(g) < 2:
        raise GenusTooSmall(f"genus {genus(g)} < 2: stable model undefined")
    return stabilize(to_reduced(g))
