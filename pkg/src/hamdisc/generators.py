"""Seeded instance generators.

Every random generator draws from a numpy ``PCG64`` stream built as
``SeedSequence(seed, spawn_key=(tag,))`` where ``tag`` is fixed per
purpose (see ``STREAMS``).  Draws are consumed in canonical edge order
(lexicographic ``(u, v)``, ``u < v``), so identical ``(parameters, seed)``
give bit-identical graphs and orientations on every platform.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError
from .graph import Graph, Orientation

STREAMS = {
    "gnp": 1,
    "orientation": 2,
    "tournament": 3,
    "partition": 4,
    "min-degree": 5,
    "forest": 6,
    "split": 7,
    "sparse-subgraph": 8,
    "sampling": 9,
    "trial": 10,
}

MAX_SEED = 2**64 - 1


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def rng_for(seed: int, stream: str | int) -> np.random.Generator:
    tag = STREAMS[stream] if isinstance(stream, str) else int(stream)
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=(tag,))
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(base_seed: int, i: int) -> int:
    """Seed of trial ``i`` in an experiment: ``base_seed + i`` modulo 2**64."""
    return (check_seed(base_seed) + int(i)) % (MAX_SEED + 1)


def gen_complete(n: int) -> Graph:
    if n < 0:
        raise ParameterError("n must be non-negative")
    full = (1 << n) - 1
    return Graph.from_bits(n, [full ^ (1 << v) for v in range(n)], validate=False)


def gen_empty(n: int) -> Graph:
    return Graph(n)


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p): each pair independently with probability ``p``."""
    if n < 1:
        raise ParameterError("n must be at least 1")
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise ParameterError(f"edge probability must lie in [0, 1], got {p}")
    rng = rng_for(seed, "gnp")
    dense = p * n * (n - 1) / 2 > 16 * n
    if dense:
        rows = np.zeros((n, n), dtype=bool)
    else:
        edges = []
    for i in range(n - 1):
        hits = rng.random(n - 1 - i) < p
        if dense:
            rows[i, i + 1:] = hits
        else:
            for j in np.flatnonzero(hits).tolist():
                edges.append((i, i + 1 + j))
    if dense:
        rows |= rows.T
        return Graph.from_dense(rows)
    return Graph(n, edges)


def gen_extremal_ab(n: int, delta: int) -> tuple[Graph, Orientation]:
    """The tightness construction: A = {0..n-delta-1}, B = the rest.

    Edges are all pairs meeting B.  A-B edges point into B, edges inside B
    point from the lower id to the higher id.
    """
    if n < 3:
        raise ParameterError("extremal construction needs n >= 3")
    if delta >= n or 2 * delta < n:
        raise ParameterError(f"need ceil(n/2) <= delta < n, got n={n}, delta={delta}")
    a_size = n - delta
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if v >= a_size]
    g = Graph(n, edges)
    # every edge has its larger endpoint in B, so low -> high covers both rules
    o = Orientation.from_arcs(g, edges)
    return g, o


def gen_random_orientation(g: Graph, seed: int, stream: str = "orientation") -> Orientation:
    rng = rng_for(seed, stream)
    bits = rng.integers(0, 2, size=g.m, dtype=np.int8).astype(bool)
    return Orientation.from_dir_bits(g, bits)


def gen_random_tournament(n: int, seed: int) -> Orientation:
    if n < 1:
        raise ParameterError("n must be at least 1")
    return gen_random_orientation(gen_complete(n), seed, stream="tournament")


def gen_transitive_tournament(n: int) -> Orientation:
    g = gen_complete(n)
    return Orientation.from_dir_bits(g, np.ones(g.m, dtype=bool))


def gen_min_degree(n: int, delta: int, seed: int) -> Graph:
    """Random graph with minimum degree exactly ``delta`` (for ``delta < n-1``).

    Starts from K_n and deletes edges in a seeded random order whenever
    both endpoints stay above ``delta``; the result is edge-minimal for
    that degree bound, which makes it a hard Dirac-type instance.
    """
    if not 0 <= delta <= n - 1:
        raise ParameterError(f"need 0 <= delta <= n-1, got delta={delta}, n={n}")
    rng = rng_for(seed, "min-degree")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    order = rng.permutation(len(edges))
    deg = [n - 1] * n
    keep = [True] * len(edges)
    for idx in order.tolist():
        u, v = edges[idx]
        if deg[u] > delta and deg[v] > delta:
            keep[idx] = False
            deg[u] -= 1
            deg[v] -= 1
    return Graph(n, [e for e, k in zip(edges, keep) if k])


def gen_cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)]) if n >= 3 else Graph(n)


def gen_path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def gen_complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def gen_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def beta_to_c(beta: float) -> float:
    """C such that G(n, C/n) is w.h.p. a beta-graph (first-moment bound).

    Pairs of disjoint sets of size beta*n number at most (e/beta)^(2 beta n),
    each edgeless with probability exp(-C beta^2 n); the union bound
    vanishes once C > 2 ln(e/beta) / beta.
    """
    if not 0 < beta < 1:
        raise ParameterError("beta must lie in (0, 1)")
    return 2.0 * math.log(math.e / beta) / beta


def hamiltonicity_p(n: int, slack: float) -> float:
    """(log n + log log n + slack) / n, clipped to [0, 1]."""
    if n < 3:
        raise ParameterError("need n >= 3")
    return min(1.0, max(0.0, (math.log(n) + math.log(math.log(n)) + slack) / n))


def gen_linear_forest(g: Graph, t: int, seed: int) -> list[tuple[int, int]]:
    """Up to t edges of g forming a linear forest (edges scanned in seeded order)."""
    rng = rng_for(seed, "forest")
    edges = list(g.edges())
    deg = [0] * g.n
    root = list(range(g.n))

    def find(v: int) -> int:
        while root[v] != v:
            root[v] = root[root[v]]
            v = root[v]
        return v

    out = []
    for i in rng.permutation(len(edges)).tolist():
        if len(out) == t:
            break
        u, v = edges[i]
        if deg[u] < 2 and deg[v] < 2 and find(u) != find(v):
            root[find(u)] = find(v)
            deg[u] += 1
            deg[v] += 1
            out.append((u, v))
    return out
