"""Fixture loading and random generators of valid fiber graphs."""

from __future__ import annotations

import random
from pathlib import Path

from stablered.document import parse
from stablered.errors import StableReductionError
from stablered.fibergraph import Component, FiberGraph, blow_up_edge, blow_up_point, validate
from stablered.saito import chain_structure_problems, saito_check

FIXTURES = Path(__file__).parent / "fixtures"
PIPELINE_FIXTURES = ["fe", "single", "chain121", "triangle", "triangle3", "p2chain", "six_tails"]


def load(name: str) -> FiberGraph:
    g, _ = parse((FIXTURES / f"{name}.json").read_text())
    return g


def fe_graph() -> FiberGraph:
    return FiberGraph.build([("F", 1, 2), ("E", 0, 1)], [("F", "E"), ("F", "E")])


def chain_graph(mults, genera=None, p=0) -> FiberGraph:
    genera = genera or [0] * len(mults)
    comps = [(f"C{i}", gen, m) for i, (gen, m) in enumerate(zip(genera, mults))]
    edges = [(f"C{i}", f"C{i + 1}") for i in range(len(mults) - 1)]
    return FiberGraph.build(comps, edges, p)


def random_reduced_base(rng: random.Random, max_vertices=4) -> FiberGraph:
    """Random connected graph, all multiplicities 1 and genus >= 2."""
    while True:
        k = rng.randint(1, max_vertices)
        comps = [Component(f"V{i}", rng.randint(0, 2), 1) for i in range(k)]
        edges = [(f"V{i}", f"V{rng.randrange(i)}") for i in range(1, k)]
        if k > 1:
            for _ in range(rng.randint(0, 2)):
                i, j = rng.sample(range(k), 2)
                edges.append((f"V{i}", f"V{j}"))
        g = FiberGraph(tuple(comps), tuple(edges))
        if validate(g).genus_at_least_two:
            return g


def random_blown_up(rng: random.Random, blowups=None, p=0) -> FiberGraph:
    g = random_reduced_base(rng)
    for _ in range(rng.randint(0, 4) if blowups is None else blowups):
        if g.edges and rng.random() < 0.7:
            g = blow_up_edge(g, rng.choice(g.edges))
        else:
            g = blow_up_point(g, rng.choice(g.ids))
    return FiberGraph(g.components, g.edges, p)


def euclid_tail(m: int, first: int) -> list[int]:
    """Multiplicities of a rational tail leaving a component of multiplicity ``m``."""
    seq = [m, first]
    while True:
        b = -(-seq[-2] // seq[-1])
        nxt = b * seq[-1] - seq[-2]
        if nxt == 0:
            return seq[1:]
        seq.append(nxt)


def random_hub(rng: random.Random, p=0) -> FiberGraph:
    """A hub of multiplicity ``m`` carrying rational tails, optionally glued to a reduced principal part."""
    while True:
        g = _hub_attempt(rng, p)
        if validate(g).ok:
            return g


def _hub_attempt(rng, p):
    m = rng.randint(2, 7)
    hub_genus = rng.randint(0, 2)
    comps = [Component("H", hub_genus, m)]
    edges = []
    firsts = [rng.randint(1, m - 1) for _ in range(rng.randint(1, 3))]
    # other neighbors of the hub contribute to the fiber relation at H
    extra = 0
    if rng.random() < 0.5:
        comps.append(Component("P", rng.randint(1, 2), 1))
        edges += [("H", "P")] * rng.randint(1, 2)
        extra = sum(1 for e in edges if e == ("H", "P"))
    fix = (-(sum(firsts) + extra)) % m
    if fix:
        firsts.append(fix)
    for t, first in enumerate(firsts):
        prev = "H"
        for j, mult in enumerate(euclid_tail(m, first)):
            cid = f"T{t}.{j}"
            comps.append(Component(cid, 0, mult))
            edges.append((prev, cid))
            prev = cid
    return FiberGraph(tuple(comps), tuple(edges), p)


def pipeline_ready(g: FiberGraph) -> bool:
    try:
        rep = validate(g)
    except StableReductionError:
        return False
    return (
        rep.ok
        and rep.genus_at_least_two
        and saito_check(g).satisfied
        and not chain_structure_problems(g)
    )


def random_pipeline_graph(rng: random.Random) -> FiberGraph:
    """Valid, Saito-satisfying, genus >= 2, with residue characteristic in {0, 2, 3}."""
    while True:
        p = rng.choice([0, 2, 3])
        g = random_blown_up(rng, p=p) if rng.random() < 0.5 else random_hub(rng, p=p)
        if pipeline_ready(g):
            return g
