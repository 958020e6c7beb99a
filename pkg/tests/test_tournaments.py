import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamdisc.errors import StructuralError
from hamdisc.generators import gen_complete, gen_random_orientation, gen_random_tournament, gen_transitive_tournament
from hamdisc.graph import Graph, Orientation, VertexPath, best_direction, forward_count
from hamdisc.oracle import oracle_max_forward
from hamdisc.tournaments import count_unbalanced_cycles, directed_hamilton_path, near_forward_cycle_from_path

seeds = st.integers(0, 2**32 - 1)


def test_transitive_path():
    t = gen_transitive_tournament(6)
    assert directed_hamilton_path(t).verts == tuple(range(6))


def test_three_cycle():
    t = Orientation.from_arcs(gen_complete(3), [(0, 1), (1, 2), (2, 0)])
    p = directed_hamilton_path(t)
    assert p.length == 2
    c = near_forward_cycle_from_path(t, p)
    assert forward_count(c, t) == 3


@given(seeds, st.integers(2, 40))
def test_path_is_directed(seed, n):
    t = gen_random_tournament(n, seed)
    p = directed_hamilton_path(t)
    assert sorted(p.verts) == list(range(n))
    assert all(t.has_arc(a, b) for a, b in zip(p.verts, p.verts[1:]))


@given(seeds, st.integers(3, 9))
def test_closed_cycle_forward(seed, n):
    t = gen_random_tournament(n, seed)
    c = near_forward_cycle_from_path(t, directed_hamilton_path(t))
    c.validate(t.host)
    f = forward_count(c, t)
    assert f in (n - 1, n)
    # independent recount of the arcs
    assert f == sum(t.has_arc(c.verts[i], c.verts[(i + 1) % n]) for i in range(n))
    assert oracle_max_forward(t) >= f


def test_large_tournament_path():
    t = gen_random_tournament(200, 7)
    p = directed_hamilton_path(t)
    c = near_forward_cycle_from_path(t, p)
    assert forward_count(c, t) in (199, 200)


def test_cycle_rejects_non_directed_path():
    t = gen_transitive_tournament(4)
    with pytest.raises(StructuralError):
        near_forward_cycle_from_path(t, VertexPath([3, 2, 1, 0]))


def test_transitive_counts():
    t = gen_transitive_tournament(5)
    assert count_unbalanced_cycles(t, 4) == 1
    # every cycle has >= ceil(n/2) edges in one direction
    assert count_unbalanced_cycles(t, math.ceil(5 / 2)) == math.factorial(4) // 2


@given(seeds, st.integers(3, 9))
def test_floor_and_monotone(seed, n):
    t = gen_random_tournament(n, seed)
    counts = [count_unbalanced_cycles(t, th) for th in range(math.ceil(n / 2), n + 1)]
    assert counts[0] == math.factorial(n - 1) // 2
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    assert count_unbalanced_cycles(t, n - 1) >= 1


def test_non_tournament_rejected():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    o = gen_random_orientation(g, 0)
    with pytest.raises(StructuralError):
        directed_hamilton_path(o)
    with pytest.raises(StructuralError):
        count_unbalanced_cycles(o, 3)


def test_best_direction_matches():
    t = gen_random_tournament(8, 3)
    c = near_forward_cycle_from_path(t, directed_hamilton_path(t))
    assert best_direction(c, t) == c
