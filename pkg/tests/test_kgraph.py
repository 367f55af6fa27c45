"""Colored-graph skeleton: normal forms, factorization, infinite tails."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktwist import degrees as dg
from ktwist.kgraph import (
    ComposabilityError,
    Edge,
    EventuallyPeriodicPath,
    KGraph,
    Square,
    builtin,
    canonical_tail,
    validate_kgraph,
)


def torus2():
    return builtin("T2")


def test_builtin_t2_shape():
    g = torus2()
    assert g.k == 2
    assert g.vertices == ("v",)
    assert len(g.edges) == 2
    assert validate_kgraph(g).ok


def test_builtin_products():
    g = builtin("B2xT1")
    assert g.k == 2
    assert validate_kgraph(g).ok
    g3 = builtin("B2xT3")
    assert g3.k == 4
    assert validate_kgraph(g3).ok


def test_builtin_disjoint_two_cycles():
    g = builtin("DISJOINT2")
    assert g.k == 1
    assert len(g.vertices) == 2
    assert validate_kgraph(g).ok


def test_unknown_builtin():
    with pytest.raises(ValueError):
        builtin("NOPE")


def test_path_normal_form_is_color_sorted():
    g = torus2()
    # compose b (color 2) then a (color 1): normal form puts color 1 first
    p = g.compose(g.edge_path("b"), g.edge_path("a"))
    q = g.compose(g.edge_path("a"), g.edge_path("b"))
    assert p.word == q.word
    assert p.degree == (1, 1)


def test_compose_requires_matching_vertices():
    g = builtin("DISJOINT2")
    with pytest.raises(ComposabilityError):
        g.compose(g.edge_path("lu"), g.edge_path("lw"))


def test_factorize_round_trip_t2():
    g = torus2()
    p = g.make_path("v", ["a", "a", "b"])
    head, tail = g.factorize(p, (1, 0))
    assert head.degree == (1, 0)
    assert g.compose(head, tail).word == p.word


def test_factorize_needs_leq_degree():
    g = torus2()
    p = g.make_path("v", ["a"])
    with pytest.raises(ValueError):
        g.factorize(p, (0, 1))


def test_segment_associativity_b2xt1():
    g = builtin("B2xT1")
    for p in g.paths_from("v", (2, 1)):
        head, tail = g.factorize(p, (1, 0))
        again = g.compose(head, tail)
        assert again.word == p.word
        mid = g.segment(p, (1, 0), (2, 1))
        assert mid.word == tail.word


def test_counting_identity_torus():
    # on T2 there is exactly one path of each degree from the vertex
    g = torus2()
    for n in dg.box((3, 3)):
        assert g.count_paths("v", n) == 1
        assert len(g.paths_from("v", n)) == 1


def test_counting_identity_b2():
    # B2 has two loops of the one color: 2^n words of length n
    g = builtin("B2")
    for n in range(4):
        assert g.count_paths("v", (n,)) == 2**n


def test_counting_product_factorizes():
    base = builtin("B2")
    prod = builtin("B2xT1")
    for n in range(3):
        for m in range(3):
            assert prod.count_paths("v", (n, m)) == base.count_paths("v", (n,))


def _three_color_swaps(sigma12: dict, sigma13: dict) -> KGraph:
    """One vertex, loops x1 x2 x3 in color 1, y in color 2, z in color 3.

    Crossing y permutes the color-1 loops by sigma12, crossing z by sigma13.
    """
    edges = tuple(
        [Edge(f"x{i}", 1, "v", "v") for i in (1, 2, 3)]
        + [Edge("y", 2, "v", "v"), Edge("z", 3, "v", "v")]
    )
    squares = tuple(
        [Square(1, 2, f"x{i}", "y", "y", sigma12[f"x{i}"]) for i in (1, 2, 3)]
        + [Square(1, 3, f"x{i}", "z", "z", sigma13[f"x{i}"]) for i in (1, 2, 3)]
        + [Square(2, 3, "y", "z", "z", "y")]
    )
    return KGraph(3, ("v",), edges, squares)


def test_hexagon_failure_detected():
    # commuting swaps across y and z are fine; non-commuting ones cannot
    # close the three-color associativity walk
    swap12 = {"x1": "x2", "x2": "x1", "x3": "x3"}
    ok = _three_color_swaps(swap12, dict(swap12))
    assert validate_kgraph(ok).ok
    swap23 = {"x1": "x1", "x2": "x3", "x3": "x2"}
    bad = _three_color_swaps(swap12, swap23)
    rep = validate_kgraph(bad)
    assert not rep.ok
    assert any("associativity" in p for p in rep.problems)


def test_missing_square_detected():
    e = [Edge("x", 1, "v", "v"), Edge("y", 2, "v", "v")]
    g = KGraph(2, ("v",), tuple(e), ())
    rep = validate_kgraph(g)
    assert not rep.ok


def test_tail_equality_independent_of_presentation():
    g = torus2()
    x = canonical_tail(g, "v")
    # same infinite path but with a longer prefix spelled out
    p = g.make_path("v", ["a", "b"])
    y = EventuallyPeriodicPath(g, p, x.cycle)
    assert x == y


def test_tail_shift_then_segment():
    g = builtin("B2xT1")
    x = canonical_tail(g, "v")
    s = x.shift((2, 1))
    assert s.segment_to((1, 0)).word == x.at((2, 1), (3, 1)).word


def test_tail_segment_prefix_consistency():
    g = torus2()
    x = canonical_tail(g, "v")
    for n in dg.box((3, 3)):
        seg = x.segment_to(n)
        assert seg.degree == n
        assert seg.range == "v"


def test_tail_prepend():
    g = builtin("B2")
    x = canonical_tail(g, "v")
    p = g.make_path("v", ["f"])
    y = x.prepend(p)
    assert y.segment_to((1,)).word == ("f",)
    assert y.shift((1,)) == x


def test_cycle_must_be_positive():
    g = builtin("B2xT1")
    with pytest.raises(ValueError):
        EventuallyPeriodicPath(g, g.vertex_path("v"), g.edge_path("e"))


@settings(max_examples=40)
@given(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3),
       st.integers(min_value=0, max_value=2), st.integers(min_value=0, max_value=2))
def test_factorize_compose_round_trip_property(a, b, c, d):
    g = builtin("B2xT1")
    n = (a + c, b + d)
    for p in g.paths_from("v", n)[:6]:
        head, tail = g.factorize(p, (a, b))
        assert head.degree == (a, b)
        assert tail.degree == (c, d)
        assert g.compose(head, tail).word == p.word


@settings(max_examples=30)
@given(st.integers(min_value=0, max_value=2), st.integers(min_value=0, max_value=2),
       st.integers(min_value=0, max_value=2), st.integers(min_value=0, max_value=2))
def test_tail_shift_additivity(a, b, c, d):
    g = torus2()
    x = canonical_tail(g, "v")
    assert x.shift((a, b)).shift((c, d)) == x.shift((a + c, b + d))
