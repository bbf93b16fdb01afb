"""Principal components, Saito's tameness criterion and the minimal tame degree."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidGraph, NoPrincipalComponents, SaitoViolated
from .fibergraph import FiberGraph, genus, require_valid
from .localmodel import lcm

NOT_RATIONAL = "not-rational"
WRONG_CONTACT_COUNT = "wrong-contact-count"
P_DIVISIBLE_NEIGHBOR = "p-divisible-neighbor"


@dataclass
class SaitoReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "violations": [{"component": c, "reason": r} for c, r in self.violations],
        }


@dataclass(frozen=True)
class PrincipalSet:
    ids: frozenset[str]
    minimal_degree: int


@dataclass(frozen=True)
class Chain:
    """A maximal chain of non-principal components.

    ``members`` is ordered along the chain; ``ends`` holds the outer
    components met by the first and last member (``None`` at a free end).
    """

    members: tuple[str, ...]
    ends: tuple[str | None, str | None]
    loop: bool = False


def is_principal(g: FiberGraph, c: str) -> bool:
    return g[c].genus > 0 or g.degree(c) > 2


def principal_components(g: FiberGraph) -> list[str]:
    return [cid for cid in g.ids if is_principal(g, cid)]


def saito_check(g: FiberGraph) -> SaitoReport:
    p = g.residue_char
    report = SaitoReport()
    if not p:
        return report
    for comp in g.components:
        if comp.mult % p:
            continue
        if comp.genus != 0:
            report.violations.append((comp.id, NOT_RATIONAL))
        if g.degree(comp.id) != 2:
            report.violations.append((comp.id, WRONG_CONTACT_COUNT))
        if any(g[nb].mult % p == 0 for nb in g.neighbors(comp.id)):
            report.violations.append((comp.id, P_DIVISIBLE_NEIGHBOR))
    return report


def minimal_degree(g: FiberGraph) -> PrincipalSet:
    """Least common multiple of the multiplicities of the principal components."""
    require_valid(g)
    report = saito_check(g)
    if not report.satisfied:
        raise SaitoViolated(f"Saito's criterion fails: {report.violations}")
    ids = principal_components(g)
    if not ids:
        raise NoPrincipalComponents(f"no principal component (genus {genus(g)}); need genus >= 2")
    return PrincipalSet(frozenset(ids), lcm(*(g[c].mult for c in ids)))


def maximal_chains(g: FiberGraph) -> list[Chain]:
    """Connected runs of non-principal components, each ordered end to end."""
    principal = set(principal_components(g))
    free = [cid for cid in g.ids if cid not in principal]
    seen = set()
    chains = []
    for start in free:
        if start in seen:
            continue
        # grow the run in both directions from any member
        run = {start}
        todo = [start]
        while todo:
            cur = todo.pop()
            for nb in g.neighbors(cur):
                if nb not in principal and nb not in run:
                    run.add(nb)
                    todo.append(nb)
        seen |= run
        inner_deg = {c: sum(1 for nb in g.neighbors(c) if nb in run) for c in run}
        tips = sorted(c for c in run if inner_deg[c] < 2)
        if not tips:
            chains.append(Chain(tuple(_walk_cycle(g, run, min(run))), (None, None), loop=True))
            continue
        first = tips[0]
        order = [first]
        prev = None
        while True:
            nxt = [nb for nb in g.neighbors(order[-1]) if nb in run and nb != prev]
            if not nxt or (len(order) > 1 and nxt[0] == order[0]):
                break
            prev = order[-1]
            order.append(nxt[0])
        chains.append(Chain(tuple(order), _outer_ends(g, order, run)))
    return chains


def _walk_cycle(g, run, start):
    order = [start]
    prev = None
    while True:
        nxt = [nb for nb in g.neighbors(order[-1]) if nb in run and nb != prev]
        if not nxt or nxt[0] == start:
            return order
        prev = order[-1]
        order.append(nxt[0])


def _outer_ends(g, order, run):
    def outer(cid, used):
        outs = [nb for nb in g.neighbors(cid) if nb not in run]
        for nb in used:
            if nb in outs:
                outs.remove(nb)
        return outs

    if len(order) == 1:
        outs = outer(order[0], [])
        return (outs[0] if outs else None, outs[1] if len(outs) > 1 else None)
    left = outer(order[0], [])
    right = outer(order[-1], [])
    return (left[0] if left else None, right[0] if right else None)


def chain_structure_problems(g: FiberGraph) -> list[str]:
    """Chains must not be loops and must reach a principal component."""
    problems = []
    for ch in maximal_chains(g):
        if ch.loop:
            problems.append(f"maximal chain {list(ch.members)} is a loop")
        elif ch.ends == (None, None):
            problems.append(f"maximal chain {list(ch.members)} meets no principal component")
    return problems


def require_pipeline_input(g: FiberGraph) -> PrincipalSet:
    report = require_valid(g)
    if not report.genus_at_least_two:
        raise NoPrincipalComponents(f"genus {report.genus} < 2: stable reduction is out of scope")
    problems = chain_structure_problems(g)
    if problems:
        raise InvalidGraph("; ".join(problems))
    return minimal_degree(g)
