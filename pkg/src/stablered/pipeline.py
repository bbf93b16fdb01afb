"""End-to-end stable reduction with staged invariant checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .basechange import SplittingPlan, divisors, search_splittings, transform
from .contract import ContractionTrace, contract_chains, to_stable
from .document import graph_to_dict
from .errors import AmbiguousSplitting, PreconditionViolated, StableReductionError
from .fibergraph import FiberGraph, ReducedGraph, genus, isomorphic, reduced_pa, validate
from .saito import require_pipeline_input


@dataclass
class Stage:
    name: str
    graph: FiberGraph | ReducedGraph
    checks: dict

    def as_dict(self) -> dict:
        return {"stage": self.name, "graph": graph_to_dict(self.graph), "checks": self.checks}


@dataclass
class PlanRun:
    plan: SplittingPlan
    stages: list[Stage]
    trace: ContractionTrace

    @property
    def stable_graph(self) -> ReducedGraph:
        return self.stages[-1].graph


@dataclass
class PipelineReport:
    input_genus: int
    degree_n: int
    principal: list[str]
    runs: list[PlanRun]
    stable_graphs: list[ReducedGraph]
    plans_considered: list[SplittingPlan] = field(default_factory=list)

    @property
    def stages(self) -> list[Stage]:
        return self.runs[0].stages

    @property
    def stable_graph(self) -> ReducedGraph:
        return self.stable_graphs[0]

    def as_dict(self) -> dict:
        return {
            "input_genus": self.input_genus,
            "degree_n": self.degree_n,
            "principal": self.principal,
            "plans_considered": [p.as_dict() for p in self.plans_considered],
            "stages": [s.as_dict() for s in self.stages],
            "contraction_trace": self.runs[0].trace.as_list(),
            "stable_graph": graph_to_dict(self.stable_graph),
            "stable_pa": reduced_pa(self.stable_graph),
            "runs": [
                {
                    "plan": r.plan.as_dict(),
                    "stable_graph": graph_to_dict(r.stable_graph),
                }
                for r in self.runs
            ],
        }


def _fiber_checks(g: FiberGraph, expected_genus: int) -> dict:
    report = validate(g)
    return {
        "valid": report.ok or g.nodal,
        "genus": report.genus,
        "genus_preserved": report.genus == expected_genus,
        "reduced": all(c.mult == 1 for c in g.components),
    }


def _finish(g0: FiberGraph, n: int, plan: SplittingPlan, resolved: FiberGraph) -> PlanRun:
    g_in = genus(g0)
    semi, trace = contract_chains(resolved)
    stable = to_stable(semi)
    stages = [
        Stage("input", g0, _fiber_checks(g0, g_in)),
        Stage("base_changed", resolved, _fiber_checks(resolved, g_in)),
        Stage("semi_stable", semi, _fiber_checks(semi, g_in)),
        Stage(
            "stable",
            stable,
            {"valid": True, "genus": reduced_pa(stable), "genus_preserved": reduced_pa(stable) == g_in},
        ),
    ]
    for st in stages:
        if not st.checks["genus_preserved"]:
            raise StableReductionError(f"stage {st.name!r} changed the genus")
    return PlanRun(plan, stages, trace)


def run(g: FiberGraph, plan: SplittingPlan | None = None) -> PipelineReport:
    """Base change to the minimal tame degree, resolve, contract and stabilize.

    Without a plan every consistent splitting is tried; if they disagree on
    the stable graph, :class:`AmbiguousSplitting` is raised.
    """
    principal = require_pipeline_input(g)
    n = principal.minimal_degree
    if plan is None:
        candidates = search_splittings(g, n)
    else:
        candidates = [(plan, transform(g, n, plan))]
    runs = [_finish(g, n, p, resolved) for p, resolved in candidates]
    distinct = []
    for r in runs:
        if not any(isomorphic(r.stable_graph, s) for s in distinct):
            distinct.append(r.stable_graph)
    if len(distinct) > 1:
        raise AmbiguousSplitting(
            f"{len(distinct)} non-isomorphic stable graphs from {len(runs)} consistent plans", distinct
        )
    return PipelineReport(
        input_genus=genus(g),
        degree_n=n,
        principal=sorted(principal.ids),
        runs=runs,
        stable_graphs=distinct,
        plans_considered=[p for p, _ in candidates],
    )


def probe_minimality(g: FiberGraph) -> list[tuple[int, dict]]:
    """Check that no proper divisor of the minimal degree yields a reduced fiber."""
    principal = require_pipeline_input(g)
    n = principal.minimal_degree
    p = g.residue_char
    outcomes = []
    for d in divisors(n)[:-1]:
        if p and d % p == 0:
            continue
        try:
            candidates = search_splittings(g, d)
        except StableReductionError as exc:
            outcomes.append((d, {"semi_stable": False, "reason": f"no consistent fiber: {exc}"}))
            continue
        reached = False
        reasons = []
        for _, resolved in candidates:
            try:
                semi, _ = contract_chains(resolved)
            except PreconditionViolated as exc:
                reasons.append(str(exc))
                continue
            reached = reached or all(c.mult == 1 for c in semi.components)
        outcomes.append((d, {"semi_stable": reached, "reason": "; ".join(sorted(set(reasons)))}))
    return outcomes
