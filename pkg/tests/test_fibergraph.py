import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import chain_graph, fe_graph, random_blown_up, random_hub
from stablered.contract import contract_component
from stablered.errors import InvalidGraph, NonIntegralGenus, NonIntegralSelfIntersection, UndefinedSelfIntersection
from stablered.fibergraph import (
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


def genus_by_hand(g):
    """Adjunction with self-intersections solved independently as Fractions."""
    total = Fraction(0)
    for c in g.components:
        nb = sum(g[x].mult for x in g.neighbors(c.id))
        s = Fraction(-nb, c.mult) if len(g.components) > 1 else 0
        total += c.mult * (2 * c.genus - 2 - s)
    return 1 + total / 2


def test_single_component_is_valid():
    g = FiberGraph.build([("C", 2, 1)])
    rep = validate(g)
    assert rep.ok and rep.genus == 2 and rep.genus_at_least_two
    assert genus(g) == 2


def test_fe_fixture_self_intersections():
    g = fe_graph()
    assert validate(g).ok
    assert self_intersection(g, "F") == -1
    assert self_intersection(g, "E") == -4
    assert genus(g) == 3 == genus_by_hand(g)


def test_tame_assumption_check():
    g = FiberGraph.build([("A", 1, 2), ("B", 1, 2)], [("A", "B"), ("A", "B")], residue_char=2)
    rep = validate(g)
    assert not rep.tame_edges and not rep.ok
    assert validate(FiberGraph.build([("A", 1, 2), ("B", 1, 2)], [("A", "B"), ("A", "B")])).tame_edges


def test_disconnected_and_nonintegral_reported():
    g = FiberGraph.build([("A", 1, 1), ("B", 1, 1)])
    assert not validate(g).connected
    h = FiberGraph.build([("A", 1, 2), ("B", 1, 1)], [("A", "B")])
    rep = validate(h)
    assert not rep.integral and rep.genus is None
    with pytest.raises(NonIntegralSelfIntersection):
        self_intersection(h, "A")


def test_minimality_warning():
    g = chain_graph([1, 2, 1], genera=[1, 0, 1])
    rep = validate(g)
    assert rep.ok and any("C1" in w for w in rep.warnings)


@pytest.mark.parametrize("mults, expected", [([1, 2, 1], -1), ([1, 1, 1], -2)])
def test_self_intersection_middle_of_chain(mults, expected):
    assert self_intersection(chain_graph(mults, genera=[1, 0, 1]), "C1") == expected


def test_self_intersection_single_component_undefined():
    with pytest.raises(UndefinedSelfIntersection):
        self_intersection(FiberGraph.build([("C", 2, 1)]), "C")


def test_genus_of_rational_loop():
    g = FiberGraph.build([("A", 0, 1), ("B", 0, 1)], [("A", "B"), ("A", "B")])
    assert self_intersection(g, "A") == -2
    assert genus(g) == 1


def test_genus_rejects_inconsistent_graph():
    # integral self-intersections, but adjunction gives a negative genus
    g = FiberGraph.build([("A", 0, 3), ("B", 0, 3)], [("A", "B")])
    assert genus_by_hand(g) == -2
    assert validate(g).genus is None
    with pytest.raises(NonIntegralGenus):
        genus(g)


def test_structural_errors():
    with pytest.raises(InvalidGraph):
        FiberGraph.build([("A", 0, 1)], [("A", "A")])
    with pytest.raises(InvalidGraph):
        FiberGraph.build([("A", 0, 1), ("A", 1, 1)])
    with pytest.raises(InvalidGraph):
        FiberGraph.build([("A", 0, 0)])
    with pytest.raises(InvalidGraph):
        FiberGraph.build([("A", -1, 1)])
    with pytest.raises(InvalidGraph):
        FiberGraph.build([("A", 0, 1)], [("A", "Z")])


@pytest.mark.parametrize(
    "graph, expected",
    [
        (ReducedGraph((("v", 2),), (("v", "v"),)), 3),
        (ReducedGraph((("v", 2), ("w", 2)), (("v", "w"),)), 4),
        (ReducedGraph((("v", 0),), (("v", "v"),) * 3), 3),
    ],
)
def test_reduced_pa(graph, expected):
    assert reduced_pa(graph) == expected


@pytest.mark.parametrize("a, b, expected", [(1, 1, 2), (2, 3, 5)])
def test_blow_up_edge_multiplicity(a, b, expected):
    g = chain_graph([a, b], genera=[1, 1])
    if not validate(g).integral:
        g = FiberGraph.build([("C0", 1, a), ("C1", 1, b)], [("C0", "C1")] * (a * b))
    h = blow_up_edge(g, g.edges[0])
    new = [c for c in h.components if c.id not in g.ids]
    assert len(new) == 1 and new[0].mult == expected and new[0].genus == 0
    assert genus(h) == genus(g)


def test_blow_up_edge_keeps_fe_genus():
    g = fe_graph()
    assert genus(blow_up_edge(g, ("F", "E"))) == 3 == genus(g)


def test_blow_up_point():
    g = FiberGraph.build([("C", 2, 1)])
    h = blow_up_point(g, "C")
    assert len(h.components) == 2 and genus(h) == 2
    assert genus(blow_up_point(h, "C")) == 2
    k = FiberGraph.build([("A", 1, 3), ("L", 0, 1)], [("A", "L")] * 3)
    leaf = [c for c in blow_up_point(k, "A").components if c.id not in k.ids][0]
    assert leaf.mult == 3


def test_isomorphic_ignores_ids_but_not_weights():
    g1 = FiberGraph.build([("a", 1, 2), ("b", 0, 1)], [("a", "b"), ("a", "b")])
    g2 = FiberGraph.build([("x", 0, 1), ("y", 1, 2)], [("x", "y"), ("y", "x")])
    assert isomorphic(g1, g2)
    g3 = FiberGraph.build([("x", 0, 1), ("y", 1, 2)], [("x", "y")])
    assert not isomorphic(g1, g3)


def _graph_from_seed(seed):
    rng = random.Random(seed)
    return random_blown_up(rng) if rng.random() < 0.5 else random_hub(rng)


graphs = st.integers(0, 2**32).map(_graph_from_seed)


@settings(max_examples=150, deadline=None)
@given(graphs)
def test_random_graphs_valid_with_negative_self_intersections(g):
    rep = validate(g)
    assert rep.ok
    assert rep.genus == genus_by_hand(g)
    if len(g.components) > 1:
        assert all(self_intersection(g, c) < 0 for c in g.ids)


@settings(max_examples=150, deadline=None)
@given(graphs, st.integers(0, 2**32))
def test_blow_ups_preserve_genus_and_round_trip(g, seed):
    rng = random.Random(seed)
    if g.edges:
        e = rng.choice(g.edges)
        h = blow_up_edge(g, e)
        assert genus(h) == genus(g)
        new = next(c.id for c in h.components if c.id not in g.ids)
        assert isomorphic(contract_component(h, new), g)
    c = rng.choice(g.ids)
    h = blow_up_point(g, c)
    assert genus(h) == genus(g)
    if len(g.components) > 1:
        new = next(x.id for x in h.components if x.id not in g.ids)
        assert self_intersection(h, new) == -1
        assert isomorphic(contract_component(h, new), g)
