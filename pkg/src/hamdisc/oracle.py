"""Brute-force ground truth for small instances.

Two independent exhaustive routes are provided for Hamilton cycles: an
explicit enumerator (``enumerate_hamilton_cycles``) and a subset dynamic
program over (visited set, last vertex) that tracks achievable forward
counts (``forward_profile``).  Tests pin each against the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .diamonds import Diamond, classify_diamond
from .errors import ParameterError, RefusalError
from .generators import rng_for
from .graph import Graph, Orientation, OrientedHamCycle, bits_of, decode_bits


@dataclass(frozen=True)
class OracleLimit:
    max_n_cycles: int = 12
    max_n_subsets: int = 20


DEFAULT_LIMIT = OracleLimit()


def _check_cycles_limit(n: int, limit: OracleLimit) -> None:
    if n > limit.max_n_cycles:
        raise RefusalError(f"n={n} exceeds the cycle-enumeration limit {limit.max_n_cycles}")


def enumerate_hamilton_cycles(g: Graph, limit: OracleLimit = DEFAULT_LIMIT) -> Iterator[OrientedHamCycle]:
    """Every undirected Hamilton cycle once, as (0, v1, ..., v_{n-1}) with v1 < v_{n-1}."""
    n = g.n
    _check_cycles_limit(n, limit)
    if n < 3:
        return
    nbits = [g.nbr_bits(v) for v in range(n)]
    full = (1 << n) - 1
    path = [0]

    def extend(v: int, seen: int):
        if seen == full:
            if nbits[v] & 1 and path[1] < path[-1]:
                yield OrientedHamCycle(path)
            return
        cand = nbits[v] & ~seen
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            path.append(w)
            yield from extend(w, seen | low)
            path.pop()

    yield from extend(0, 1)


def count_hamilton_cycles(g: Graph, limit: OracleLimit = DEFAULT_LIMIT) -> int:
    return sum(1 for _ in enumerate_hamilton_cycles(g, limit))


def forward_profile(o: Orientation, limit: OracleLimit = DEFAULT_LIMIT) -> list[int]:
    """``D[f]`` = number of directed Hamilton cycles with ``f`` forward edges.

    Directed cycles are counted from vertex 0 in both traversal senses, so
    every undirected cycle contributes once to ``D[f]`` and once to
    ``D[n-f]``.
    """
    g = o.host
    n = g.n
    _check_cycles_limit(n, limit)
    if n < 3:
        return [0] * (n + 1)
    out = [o.out_bits(v) for v in range(n)]
    nb = [g.nbr_bits(v) for v in range(n)]
    # dp[mask] maps last vertex -> list of counts indexed by forward count
    dp: list[dict[int, list[int]] | None] = [None] * (1 << n)
    dp[1] = {0: [1] + [0] * n}
    full = (1 << n) - 1
    for mask in range(1, 1 << n, 2):
        layer = dp[mask]
        if not layer:
            continue
        if mask == full:
            continue
        for v, counts in layer.items():
            cand = nb[v] & ~mask
            while cand:
                low = cand & -cand
                w = low.bit_length() - 1
                cand ^= low
                step = (out[v] >> w) & 1
                nxt = dp[mask | low]
                if nxt is None:
                    nxt = dp[mask | low] = {}
                acc = nxt.get(w)
                if acc is None:
                    acc = nxt[w] = [0] * (n + 1)
                for f, c in enumerate(counts):
                    if c:
                        acc[f + step] += c
        dp[mask] = None
    total = [0] * (n + 1)
    for v, counts in (dp[full] or {}).items():
        if not nb[v] & 1:
            continue
        step = (out[v] >> 0) & 1
        for f, c in enumerate(counts):
            if c:
                total[f + step] += c
    return total


def oracle_max_forward(o: Orientation, limit: OracleLimit = DEFAULT_LIMIT) -> int | None:
    """Max forward count over Hamilton cycles and both senses; None if non-Hamiltonian."""
    prof = forward_profile(o, limit)
    best = [f for f, c in enumerate(prof) if c]
    return max(best) if best else None


def count_cycles_min_forward(o: Orientation, threshold: int, limit: OracleLimit = DEFAULT_LIMIT) -> int:
    """Undirected Hamilton cycles whose best direction has >= threshold forward edges."""
    n = o.n
    prof = forward_profile(o, limit)
    twice = sum(c for f, c in enumerate(prof) if max(f, n - f) >= threshold)
    return twice // 2


def oracle_max_forward_enum(o: Orientation, limit: OracleLimit = DEFAULT_LIMIT) -> int | None:
    """Same quantity as ``oracle_max_forward`` by explicit enumeration."""
    best = None
    n = o.n
    for c in enumerate_hamilton_cycles(o.host, limit):
        f = sum(1 for a, b in c.steps() if o.has_arc(a, b))
        f = max(f, n - f)
        best = f if best is None else max(best, f)
    return best


def is_beta_graph(g: Graph, beta: float, limit: OracleLimit = DEFAULT_LIMIT):
    """Exact beta-graph test.

    Returns ``(True, None)`` or ``(False, (U, W))`` with disjoint U, W of
    size ceil(beta*n) and no edge between them.  Only sets of that exact
    size are enumerated: an edge between two sets is inherited by supersets.
    """
    n = g.n
    if not 0 < beta <= 1:
        raise ParameterError("beta must lie in (0, 1]")
    if n > limit.max_n_subsets:
        raise RefusalError(f"n={n} exceeds the subset-enumeration limit {limit.max_n_subsets}")
    s = math.ceil(beta * n - 1e-12)
    if 2 * s > n:
        return True, None
    nb = [g.nbr_bits(v) for v in range(n)]
    for u_set in combinations(range(n), s):
        ub = 0
        reach = 0
        for v in u_set:
            ub |= 1 << v
            reach |= nb[v]
        free = ((1 << n) - 1) & ~ub & ~reach
        if free.bit_count() >= s:
            w_set = tuple(decode_bits(free)[:s])
            return False, (set(u_set), set(w_set))
    return True, None


@dataclass(frozen=True)
class SampledVerdict:
    """Outcome of a sampled universal check.

    ``status`` is ``"violation"`` (definitive failure, ``witness`` set) or
    ``"no-violation-found"``, which is evidence only, never a proof.
    """

    status: str
    witness: object = None
    samples: int = 0
    detail: str = ""

    @property
    def violated(self) -> bool:
        return self.status == "violation"


def pair_density(g: Graph, u_set, w_set) -> float:
    wb = bits_of(w_set)
    e = sum((g.nbr_bits(u) & wb).bit_count() for u in u_set)
    return e / (len(u_set) * len(w_set))


def is_pseudorandom_sampled(g: Graph, beta: float, p: float, samples: int, seed: int) -> SampledVerdict:
    """Sample disjoint (U, W) of size ceil(beta*n) and test |d(U,W) - p| < beta*p."""
    n = g.n
    if samples < 1:
        raise ParameterError("samples must be >= 1")
    if beta * n < 1:
        raise ParameterError(f"beta*n = {beta * n:.3g} < 1")
    s = math.ceil(beta * n - 1e-12)
    if 2 * s > n:
        raise ParameterError("two disjoint sets of size ceil(beta*n) do not fit")
    rng = rng_for(seed, "sampling")
    for i in range(samples):
        pick = rng.permutation(n)[: 2 * s].tolist()
        u_set, w_set = pick[:s], pick[s:]
        d = pair_density(g, u_set, w_set)
        if not abs(d - p) < beta * p:
            return SampledVerdict("violation", (set(u_set), set(w_set)), i + 1, f"d(U,W)={d:.4g}")
    return SampledVerdict("no-violation-found", None, samples)


def enumerate_good_diamonds(o: Orientation) -> Iterator[Diamond]:
    """Every good diamond once: centre (a, b) with a -> b, ends c < d."""
    g = o.host
    for a, b in g.edges():
        if not o.has_arc(a, b):
            a, b = b, a
        common = decode_bits(g.nbr_bits(a) & g.nbr_bits(b))
        for c, d in combinations(common, 2):
            dia = Diamond(a, b, c, d)
            if classify_diamond(o, dia):
                yield dia


def _path_reach(g: Graph, starts=None) -> list[int]:
    """reach[mask] = bitset of v such that some path with vertex set mask ends at v."""
    n = g.n
    nb = [g.nbr_bits(v) for v in range(n)]
    reach = [0] * (1 << n)
    for v in (range(n) if starts is None else starts):
        reach[1 << v] |= 1 << v
    for mask in range(1, 1 << n):
        ends = reach[mask]
        while ends:
            low = ends & -ends
            ends ^= low
            cand = nb[low.bit_length() - 1] & ~mask
            while cand:
                w = cand & -cand
                cand ^= w
                reach[mask | w] |= w
    return reach


def longest_path_length(g: Graph, limit: OracleLimit = DEFAULT_LIMIT) -> int:
    """Number of edges of a longest path (exact, subset DP)."""
    _check_cycles_limit(g.n, limit)
    if g.n == 0:
        return -1
    reach = _path_reach(g)
    return max(mask.bit_count() for mask in range(1, 1 << g.n) if reach[mask]) - 1


def is_hamiltonian(g: Graph, limit: OracleLimit = DEFAULT_LIMIT) -> bool:
    n = g.n
    _check_cycles_limit(n, limit)
    if n < 3:
        return False
    ends = _path_reach(g, starts=[0])[(1 << n) - 1]
    return bool(ends & g.nbr_bits(0))


def is_booster(g: Graph, u: int, v: int, limit: OracleLimit = DEFAULT_LIMIT) -> bool:
    """Non-edge whose addition makes g Hamiltonian or lengthens its longest path."""
    if g.has_edge(u, v) or u == v:
        return False
    h = Graph(g.n, list(g.edges()) + [(u, v)])
    return is_hamiltonian(h, limit) or longest_path_length(h, limit) > longest_path_length(g, limit)


def enumerate_longest_paths(g: Graph, limit: OracleLimit = DEFAULT_LIMIT) -> Iterator[tuple[int, ...]]:
    """Every longest path once (as the traversal with first < last)."""
    n = g.n
    _check_cycles_limit(n, limit)
    if n == 0:
        return
    ell = longest_path_length(g, limit)
    target = ell + 1
    nb = [g.nbr_bits(v) for v in range(n)]
    memo: dict = {}

    def can_finish(mask: int, v: int) -> bool:
        key = (mask, v)
        hit = memo.get(key)
        if hit is None:
            if mask.bit_count() == target:
                hit = True
            else:
                hit = False
                cand = nb[v] & ~mask
                while cand and not hit:
                    w = cand & -cand
                    cand ^= w
                    hit = can_finish(mask | w, w.bit_length() - 1)
            memo[key] = hit
        return hit

    path: list[int] = []

    def walk(mask: int, v: int):
        path.append(v)
        if mask.bit_count() == target:
            if target == 1 or path[0] < path[-1]:
                yield tuple(path)
        else:
            cand = nb[v] & ~mask
            while cand:
                w = cand & -cand
                cand ^= w
                x = w.bit_length() - 1
                if can_finish(mask | w, x):
                    yield from walk(mask | w, x)
        path.pop()

    for s in range(n):
        if can_finish(1 << s, s):
            yield from walk(1 << s, s)


def cycle_through_edges_exists(g: Graph, edges, limit: OracleLimit = DEFAULT_LIMIT) -> bool:
    """Is there a Hamilton cycle containing every edge in ``edges``?"""
    need = {(min(u, v), max(u, v)) for u, v in edges}
    return any(need <= c.edges() for c in enumerate_hamilton_cycles(g, limit))
