import math
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamdisc.diamonds import (Diamond, NoTriangleError, _pigeonhole, classify_diamond, find_disjoint_good_diamonds,
                              find_good_diamond, heavy_triangle_edge, packing_threshold, positive_paths,
                              triangle_counts)
from hamdisc.errors import NotFoundError, PreconditionError, StructuralError
from hamdisc.generators import gen_complete, gen_complete_bipartite, gen_random_orientation, rng_for
from hamdisc.graph import Graph, Orientation, path_balance

seeds = st.integers(0, 2**32 - 1)

BOTH = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]


def diamond_orientation(arcs):
    return Orientation.from_arcs(Graph(4, BOTH), arcs)


def dense_graph(n, extra, seed):
    """Random graph on n vertices with floor(n^2/4) + extra edges."""
    rng = rng_for(seed, "trial")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    pick = rng.choice(len(pairs), size=n * n // 4 + extra, replace=False)
    return Graph(n, [pairs[i] for i in pick.tolist()])


def test_classify_examples():
    dia = Diamond(0, 1, 2, 3)
    assert classify_diamond(diamond_orientation([(0, 1), (2, 0), (2, 1), (3, 0), (3, 1)]), dia)
    assert not classify_diamond(diamond_orientation([(0, 1), (0, 2), (1, 2), (3, 0), (3, 1)]), dia)
    assert classify_diamond(diamond_orientation([(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)]), dia)
    with pytest.raises(StructuralError):
        classify_diamond(Orientation.from_arcs(Graph(4, BOTH[:4]), BOTH[:4]), dia)


def test_exactly_four_good_diamonds_up_to_ab():
    """Of the 16 orientations of the four spokes, exactly 4 are good."""
    good = 0
    for bits in product([0, 1], repeat=4):
        arcs = [(0, 1)] + [(u, v) if s else (v, u) for (u, v), s in zip(BOTH[1:], bits)]
        good += classify_diamond(diamond_orientation(arcs), Diamond(0, 1, 2, 3))
    assert good == 4


def test_positive_paths_examples():
    o = diamond_orientation([(2, 0), (2, 1), (3, 0), (3, 1), (0, 1)])
    dp = positive_paths(o, Diamond(0, 1, 2, 3))
    assert dp.p.verts == (2, 0, 1, 3) and dp.q.verts == (3, 0, 1, 2)
    assert path_balance(dp.p, o) == 1 and path_balance(dp.q, o) == 1
    o = diamond_orientation([(0, 2), (1, 2), (0, 3), (1, 3), (0, 1)])
    assert positive_paths(o, Diamond(0, 1, 2, 3)).p.verts == (2, 0, 1, 3)
    with pytest.raises(PreconditionError):
        positive_paths(diamond_orientation([(0, 1), (0, 2), (1, 2), (3, 0), (3, 1)]), Diamond(0, 1, 2, 3))


def test_positive_path_balances_all_orientations():
    """Every orientation of the five edges: good diamonds give balances in {1, 3}."""
    for bits in product([0, 1], repeat=5):
        arcs = [(u, v) if s else (v, u) for (u, v), s in zip(BOTH, bits)]
        o = diamond_orientation(arcs)
        a, b = (0, 1) if o.has_arc(0, 1) else (1, 0)
        dia = Diamond(a, b, 2, 3)
        if classify_diamond(o, dia):
            dp = positive_paths(o, dia)
            assert path_balance(dp.p, o) in (1, 3) and path_balance(dp.q, o) in (1, 3)
            assert dp.p.first == 2 and dp.p.last == 3 and dp.q.first == 3 and dp.q.last == 2


def test_heavy_edge_examples():
    (u, v), common = heavy_triangle_edge(gen_complete(30))
    assert len(common) == 28
    assert gen_complete_bipartite(15, 15).m == 225
    with pytest.raises(NoTriangleError):
        heavy_triangle_edge(gen_complete_bipartite(15, 15))


@pytest.mark.parametrize("seed", range(5))
def test_heavy_edge_on_threshold_graph(seed):
    g = dense_graph(30, 1, seed)
    assert g.m == 226
    (u, v), common = heavy_triangle_edge(g)
    counts = triangle_counts(g)
    assert len(common) == max(counts.values()) == counts[(u, v)]
    assert len(common) >= max(5, math.ceil(30 / 6))


def test_pigeonhole_exhaustive_on_five_common_neighbours():
    """A book with spine {0,1} and 5 pages always has a good diamond on the spine."""
    edges = [(0, 1)] + [(s, x) for x in range(2, 7) for s in (0, 1)]
    g = Graph(7, edges)
    for bits in product([0, 1], repeat=10):
        arcs = [(0, 1)] + [(u, v) if s else (v, u) for (u, v), s in zip(edges[1:], bits)]
        o = Orientation.from_arcs(g, arcs)
        dia = _pigeonhole(o, 0, 1, range(2, 7))
        assert dia is not None and classify_diamond(o, dia)


def test_four_pages_can_defeat_pigeonhole():
    edges = [(0, 1)] + [(s, x) for x in range(2, 6) for s in (0, 1)]
    arcs = [(0, 1)]
    for x, cls in zip(range(2, 6), range(4)):
        arcs.append((x, 0) if cls & 1 else (0, x))
        arcs.append((x, 1) if cls & 2 else (1, x))
    assert _pigeonhole(Orientation.from_arcs(Graph(6, edges), arcs), 0, 1, range(2, 6)) is None


@given(seeds)
def test_find_good_diamond_on_k30(seed):
    o = gen_random_orientation(gen_complete(30), seed)
    assert classify_diamond(o, find_good_diamond(o))


def test_find_good_diamond_triangle_free():
    o = gen_random_orientation(gen_complete_bipartite(15, 15), 0)
    with pytest.raises(NotFoundError):
        find_good_diamond(o)


def test_packing_examples():
    assert packing_threshold(34, 2) == 352
    assert packing_threshold(30, 1) == 30 * 30 / 4 + 1
    o = gen_random_orientation(gen_complete(34), 3)
    assert find_disjoint_good_diamonds(o, 0) == []
    for s in range(10):
        o = gen_random_orientation(gen_complete(34), s)
        ds = find_disjoint_good_diamonds(o, 2)
        assert len({v for d in ds for v in d.vertices}) == 8
        assert all(classify_diamond(o, d) for d in ds)


@given(seeds, st.integers(1, 4))
def test_packing_at_threshold(seed, k):
    n = 30 + 4 * (k - 1)
    extra = math.ceil(packing_threshold(n, k)) - n * n // 4
    g = dense_graph(n, extra, seed)
    o = gen_random_orientation(g, seed)
    ds = find_disjoint_good_diamonds(o, k)
    assert len(ds) == k and len({v for d in ds for v in d.vertices}) == 4 * k
    assert all(classify_diamond(o, d) for d in ds)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_tripartite_has_at_most_k_minus_one(k):
    """Complete tripartite graph with |A| = k-1: every triangle meets A."""
    n = 34
    a = list(range(k - 1))
    rest = list(range(k - 1, n))
    half = len(rest) // 2
    side = {v: 0 for v in a}
    side.update({v: 1 for v in rest[:half]})
    side.update({v: 2 for v in rest[half:]})
    g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if side[u] != side[v]])
    o = gen_random_orientation(g, k)
    with pytest.raises(NotFoundError) as info:
        find_disjoint_good_diamonds(o, k)
    assert info.value.info["progress"] <= k - 1
