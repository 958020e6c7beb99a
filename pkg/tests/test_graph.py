import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamdisc.errors import StructuralError
from hamdisc.generators import gen_complete, gen_empty, gen_gnp, gen_random_orientation, gen_star
from hamdisc.graph import (Graph, Orientation, OrientedHamCycle, VertexPath, backward_count, best_direction,
                           edge_count, format_graph, format_oriented, forward_count, max_degree, min_degree,
                           parse_graph, parse_oriented, path_balance)

seeds = st.integers(0, 2**32 - 1)


def k3(arcs):
    return Orientation.from_arcs(gen_complete(3), arcs)


def test_forward_count_examples():
    assert forward_count(OrientedHamCycle([0, 1, 2]), k3([(0, 1), (1, 2), (2, 0)])) == 3
    assert forward_count(OrientedHamCycle([0, 1, 2]), k3([(0, 1), (2, 1), (2, 0)])) == 2


def test_best_direction_examples():
    o = k3([(1, 0), (2, 1), (2, 0)])  # cycle 0,1,2 has only 2->0 forward
    c = OrientedHamCycle([0, 1, 2])
    assert forward_count(c, o) == 1
    b = best_direction(c, o)
    assert b == c.reversed() and forward_count(b, o) == 2
    cyc = k3([(0, 1), (1, 2), (2, 0)])
    assert best_direction(c, cyc) == c
    g4 = gen_complete(4)
    o4 = Orientation.from_arcs(g4, [(0, 1), (1, 2), (3, 2), (0, 3), (0, 2), (1, 3)])
    c4 = OrientedHamCycle([0, 1, 2, 3])
    assert forward_count(c4, o4) == 2
    assert best_direction(c4, o4) == c4


def test_path_balance_examples():
    o = k3([(0, 1), (1, 2), (0, 2)])
    assert path_balance(VertexPath([0, 1, 2]), o) == 2
    o = k3([(1, 0), (1, 2), (0, 2)])
    assert path_balance(VertexPath([0, 1, 2]), o) == 0


def test_degree_stats():
    assert (min_degree(gen_complete(5)), max_degree(gen_complete(5)), edge_count(gen_complete(5))) == (4, 4, 10)
    s = gen_star(4)
    assert (min_degree(s), max_degree(s), edge_count(s)) == (1, 4, 4)
    e = gen_empty(3)
    assert (min_degree(e), max_degree(e), edge_count(e)) == (0, 0, 0)


@pytest.mark.parametrize("bad", [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)], [(-1, 2)]])
def test_graph_rejects_bad_edges(bad):
    with pytest.raises(StructuralError):
        Graph(4, bad)


def test_parsers_reject_bad_input():
    with pytest.raises(StructuralError):
        parse_graph("3 1\n0 0\n")
    with pytest.raises(StructuralError):
        parse_graph("3 2\n0 1\n1 0\n")
    with pytest.raises(StructuralError):
        parse_graph("3 1\n0 3\n")
    with pytest.raises(StructuralError):
        parse_graph("3 2\n0 1\n")
    with pytest.raises(StructuralError):
        parse_oriented("3 1\n0 1 2\n")


def test_cycle_validation():
    g = gen_complete(4)
    with pytest.raises(StructuralError):
        OrientedHamCycle([0, 1, 2]).validate(g)
    with pytest.raises(StructuralError):
        OrientedHamCycle([0, 1, 1, 2]).validate(g)
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    with pytest.raises(StructuralError):
        OrientedHamCycle([0, 2, 1, 3]).validate(c4)


@given(seeds, st.integers(3, 25), st.floats(0.0, 1.0))
def test_text_format_roundtrip(seed, n, p):
    g = gen_gnp(n, p, seed)
    assert parse_graph(format_graph(g)) == g
    o = gen_random_orientation(g, seed)
    assert parse_oriented(format_oriented(o)) == o


@given(seeds, st.integers(3, 30))
def test_forward_plus_reverse_is_n(seed, n):
    o = gen_random_orientation(gen_complete(n), seed)
    perm = [int(v) for v in __import__("numpy").random.default_rng(seed).permutation(n)]
    c = OrientedHamCycle(perm)
    f = forward_count(c, o)
    assert f + forward_count(c.reversed(), o) == n
    assert backward_count(c, o) == n - f
    assert forward_count(best_direction(c, o), o) >= math.ceil(n / 2)


@given(seeds, st.integers(2, 30))
def test_path_balance_antisymmetric(seed, n):
    import numpy as np

    o = gen_random_orientation(gen_complete(n), seed)
    p = VertexPath(np.random.default_rng(seed).permutation(n).tolist())
    assert path_balance(p.reversed(), o) == -path_balance(p, o)
