import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamdisc.diamonds import Diamond, DiamondPaths, positive_paths
from hamdisc.dirac import flip_mismatched, majority_direction, unbalanced_hamilton_cycle
from hamdisc.errors import ParameterError, StructuralError
from hamdisc.generators import (gen_complete, gen_extremal_ab, gen_min_degree, gen_random_orientation)
from hamdisc.graph import Graph, Orientation, OrientedHamCycle, VertexPath, best_direction, forward_count
from hamdisc.oracle import oracle_max_forward

seeds = st.integers(0, 2**32 - 1)


def test_majority_direction_examples():
    o = gen_random_orientation(gen_complete(7), 3)
    h = OrientedHamCycle(range(7))
    assert majority_direction(h, o) == best_direction(h, o)
    fwd = Orientation.from_arcs(gen_complete(5), [(i, (i + 1) % 5) for i in range(5)] + [(0, 2), (1, 3), (2, 4), (3, 0), (4, 1)])
    c5 = OrientedHamCycle(range(5))
    assert majority_direction(c5, fwd) == c5


def test_majority_direction_fixture():
    """6-cycle, 2 excluded edges, 3 of the other 4 backward: reversed."""
    g = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    arcs = [(0, 1), (1, 2), (3, 2), (4, 3), (5, 4), (0, 5)]
    o = Orientation.from_arcs(g, arcs)
    h = OrientedHamCycle(range(6))
    # excluded {0,1},{1,2} are forward; the rest: 2-3 back, 3-4 back, 4-5 back, 5-0 back
    # make exactly 3 of the 4 backward by flipping 5-0
    o = Orientation.from_arcs(g, arcs[:5] + [(5, 0)])
    assert forward_count(h, o) == 3
    assert majority_direction(h, o, excluded=[(0, 1), (1, 2)]) == h.reversed()
    assert majority_direction(h, o) == h  # tie 3-3 keeps the input


def diamond_fixture():
    """K_6 with diamond a=0, b=1, c=2, d=3; both ends send to both centres."""
    g = gen_complete(6)
    arcs = [(0, 1), (2, 0), (2, 1), (3, 0), (3, 1), (2, 3), (4, 0), (1, 4), (4, 2), (3, 4), (5, 0), (5, 1),
            (2, 5), (5, 3), (4, 5)]
    o = Orientation.from_arcs(g, arcs)
    dia = Diamond(0, 1, 2, 3)
    return o, dia, positive_paths(o, dia)


def test_flip_examples():
    o, dia, dp = diamond_fixture()
    assert dp.p.verts == (2, 0, 1, 3)
    h = OrientedHamCycle([2, 0, 1, 3, 4, 5])
    out, flipped = flip_mismatched(h, o, [dia], [dp])
    assert out == h and flipped == set()
    # traversal runs P from d to c
    h = OrientedHamCycle([3, 1, 0, 2, 4, 5])
    out, flipped = flip_mismatched(h, o, [dia], [dp])
    assert flipped == {0}
    out.validate(o.host)
    assert set(dp.q.edges()) <= out.edges()

    def seg_balance(c):
        steps = [(a, b) for a, b in c.steps() if {a, b} <= set(dia.vertices)]
        assert len(steps) == 3
        return sum(1 if o.has_arc(a, b) else -1 for a, b in steps)

    assert seg_balance(h) == -1 and seg_balance(out) == 1
    with pytest.raises(StructuralError):
        flip_mismatched(OrientedHamCycle([2, 4, 0, 1, 3, 5]), o, [dia], [dp])


def test_unbalanced_examples():
    for s in range(5):
        o = gen_random_orientation(gen_complete(30), s)
        res = unbalanced_hamilton_cycle(o, 2)
        assert res.forward == forward_count(res.cycle, o) >= 16
        assert len(res.diamonds_used) == 2
    g, o = gen_extremal_ab(30, 15)
    assert unbalanced_hamilton_cycle(o, 0).forward >= 15
    g, o = gen_extremal_ab(8, 4)
    assert unbalanced_hamilton_cycle(o, 0).forward <= oracle_max_forward(o) == 4


def test_unbalanced_preconditions():
    o = gen_random_orientation(gen_min_degree(30, 16, 0), 0)
    with pytest.raises(ParameterError):
        unbalanced_hamilton_cycle(o, 1)
    with pytest.raises(ParameterError):
        unbalanced_hamilton_cycle(o, -1)


@given(seeds, st.integers(3, 60))
def test_k0_gives_majority(seed, n):
    g = gen_min_degree(n, math.ceil(n / 2), seed)
    o = gen_random_orientation(g, seed)
    res = unbalanced_hamilton_cycle(o, 0)
    assert res.forward >= math.ceil(n / 2)


@given(seeds, st.sampled_from([30, 40, 60]), st.integers(0, 2), st.booleans())
def test_theorem_bound(seed, n, k, complete):
    delta = n - 1 if complete else math.ceil((n + 8 * k) / 2)
    g = gen_min_degree(n, delta, seed)
    o = gen_random_orientation(g, seed)
    res = unbalanced_hamilton_cycle(o, k)
    res.cycle.validate(g)
    assert res.forward == forward_count(res.cycle, o) >= math.ceil((n + k) / 2)
    for i, dp in enumerate(res.paths):
        seg = dp.q if i in res.flipped else dp.p
        assert set(seg.edges()) <= res.cycle.edges()


@given(seeds, st.integers(6, 10))
def test_pipeline_below_oracle(seed, n):
    g = gen_min_degree(n, math.ceil(n / 2) + seed % 2 if math.ceil(n / 2) + 1 < n else n - 1, seed)
    o = gen_random_orientation(g, seed)
    res = unbalanced_hamilton_cycle(o, 0)
    assert res.forward <= oracle_max_forward(o)
