"""Nearly-forward long paths in beta-graphs.

Harvest many short directed paths, link them through an auxiliary
digraph on path indices, and follow a long path of that digraph.  Only
the linking edges can point backwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundViolationError, NotFoundError, PartialHarvestError, TooShortError
from .generators import beta_to_c
from .graph import Graph, Orientation, VertexPath, path_backward


class Digraph:
    """Simple digraph on [m]."""

    def __init__(self, m: int, arcs=()):
        self.m = int(m)
        self.out: list[list[int]] = [[] for _ in range(self.m)]
        seen = set()
        for u, v in arcs:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-arc at {u}")
            if not (0 <= u < self.m and 0 <= v < self.m):
                raise ValueError(f"arc {u}->{v} out of range")
            if (u, v) not in seen:
                seen.add((u, v))
                self.out[u].append(v)
        for lst in self.out:
            lst.sort()
        self.arcs = frozenset(seen)

    @classmethod
    def from_dense(cls, adj: np.ndarray) -> "Digraph":
        adj = np.asarray(adj, dtype=bool).copy()
        np.fill_diagonal(adj, False)
        us, vs = np.nonzero(adj)
        return cls(adj.shape[0], zip(us.tolist(), vs.tolist()))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_bits(self, u: int) -> int:
        b = 0
        for v in self.out[u]:
            b |= 1 << v
        return b

    def is_path(self, seq) -> bool:
        seq = list(seq)
        return len(set(seq)) == len(seq) and all(self.has_arc(a, b) for a, b in zip(seq, seq[1:]))

    def __repr__(self) -> str:
        return f"Digraph(m={self.m}, arcs={len(self.arcs)})"


# -- parameters ---------------------------------------------------------


def paper_beta_bound(beta: float) -> float:
    """(sqrt(2b)/(1+sqrt(2b)) - 2b) * (1/(2 sqrt b) - 2), the relaxed chain."""
    s = math.sqrt(2 * beta)
    return (s / (1 + s) - 2 * beta) * (1 / (2 * math.sqrt(beta)) - 2)


def path_params(beta: float, n: int) -> tuple[int, int, int]:
    """(ell, m, k): piece length, piece count and DFS set size."""
    ell = max(1, math.ceil(1 / math.sqrt(2 * beta) - 1e-12) - 2)
    m = max(1, min(math.ceil(n / (ell + 2)), n // 2))
    k = math.ceil(beta * n - 1e-12)
    return ell, m, k


def exact_beta_bound(beta: float) -> float:
    """(sqrt(2b)/(1+sqrt(2b)) - 2b) * ell with ell = ceil(1/sqrt(2b)) - 2."""
    s = math.sqrt(2 * beta)
    ell = math.ceil(1 / s - 1e-12) - 2
    return (s / (1 + s) - 2 * beta) * ell


def choose_beta(delta: float, max_exp: int = 60) -> float:
    """Largest 2^-i with exact_beta_bound >= 1 - delta and 4 sqrt(beta) <= delta."""
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    for i in range(1, max_exp + 1):
        b = 2.0 ** -i
        if 4 * math.sqrt(b) <= delta and exact_beta_bound(b) >= 1 - delta:
            return b
    return 2.0 ** -max_exp


def gnp_c_for_delta(delta: float) -> float:
    return beta_to_c(choose_beta(delta))


# -- directed paths -----------------------------------------------------


def _layers(dag: np.ndarray) -> np.ndarray:
    """Longest-path layer of every vertex of an acyclic 0/1 matrix (level-synchronous Kahn)."""
    k = dag.shape[0]
    indeg = dag.sum(axis=0, dtype=np.int64)
    f = np.full(k, -1, dtype=np.int64)
    frontier = np.flatnonzero(indeg == 0)
    level = 0
    while frontier.size:
        f[frontier] = level
        indeg -= dag[frontier].sum(axis=0, dtype=np.int64)
        frontier = np.flatnonzero((indeg == 0) & (f < 0))
        level += 1
    if (f < 0).any():
        raise AssertionError("sub-digraph is not acyclic")
    return f


def _backtrack(dag: np.ndarray, f: np.ndarray) -> list[int]:
    v = int(np.argmax(f))
    path = [v]
    while f[v] > 0:
        v = int(np.flatnonzero(dag[:, v] & (f == f[v] - 1))[0])
        path.append(v)
    return path[::-1]


def _longest_directed(out: np.ndarray, target: int) -> list[int]:
    """Directed path of the orientation given by ``out``, long enough or colour-certified.

    Starts from the acyclic sub-digraph of id-increasing arcs.  While some
    arc joins two vertices of the same layer, those arcs (one id direction
    at a time, which keeps acyclicity) are added.  When no such arc is
    left the layering properly colours the host, so the longest path has
    at least chi - 1 edges.
    """
    k = out.shape[0]
    if k == 0:
        return []
    dag = np.triu(out, 1)
    while True:
        f = _layers(dag)
        if f.max() >= target:
            break
        same = out & (f[:, None] == f[None, :])
        if not same.any():
            break
        inc = np.triu(same, 1)
        dag |= inc if inc.any() else np.tril(same, -1)
    return _backtrack(dag, f)


def gallai_roy_path(o: Orientation, target_len: int) -> VertexPath:
    """Directed path of length >= target_len whenever chi(host) > target_len."""
    p = VertexPath(_longest_directed(o.dense_out(), target_len))
    if p.length < target_len:
        raise TooShortError(f"longest directed path found has length {p.length} < {target_len}", path=p)
    return p


def _csr(n: int, tails: np.ndarray, heads: np.ndarray):
    order = np.argsort(tails, kind="stable")
    return np.searchsorted(tails[order], np.arange(n + 1)), heads[order], tails[order]


def _gather(start: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Concatenated CSR index ranges of ``verts``."""
    cnt = start[verts + 1] - start[verts]
    tot = int(cnt.sum())
    if tot == 0:
        return np.zeros(0, dtype=np.int64)
    first = np.repeat(start[verts] - np.cumsum(cnt) + cnt, cnt)
    return first + np.arange(tot)


def _layers_sparse(n: int, alive: np.ndarray, tails: np.ndarray, heads: np.ndarray) -> np.ndarray:
    start, hh, _ = _csr(n, tails, heads)
    indeg = np.bincount(heads, minlength=n)
    f = np.full(n, -1, dtype=np.int64)
    frontier = np.flatnonzero(alive & (indeg == 0))
    level = 0
    while frontier.size:
        f[frontier] = level
        indeg -= np.bincount(hh[_gather(start, frontier)], minlength=n)
        frontier = np.flatnonzero(alive & (indeg == 0) & (f < 0))
        level += 1
    if (alive & (f < 0)).any():
        raise AssertionError("sub-digraph is not acyclic")
    return f


def _pieces_sparse(n: int, alive: np.ndarray, tails: np.ndarray, heads: np.ndarray, ell: int,
                   want: int) -> list[list[int]]:
    """Same layering scheme as the dense route, on arc lists; then cut
    greedily many disjoint chains of ell tight arcs (f drops by one per arc)."""
    sel = alive[tails] & alive[heads]
    t, h = tails[sel], heads[sel]
    dag = t < h
    while True:
        f = _layers_sparse(n, alive, t[dag], h[dag])
        if f.max() >= ell:
            break
        same = (f[t] == f[h]) & ~dag
        if not same.any():
            break
        inc = same & (t < h)
        dag |= inc if inc.any() else same & (t > h)
    tight = dag & (f[t] == f[h] - 1)
    start, preds, _ = _csr(n, h[tight], t[tight])
    used = np.zeros(n, dtype=bool)
    pieces = []
    for v in np.argsort(-f, kind="stable").tolist():
        if f[v] < ell or len(pieces) == want:
            break
        if used[v]:
            continue
        chain = [v]
        cur = v
        while len(chain) <= ell:
            nxt = -1
            for u in preds[start[cur]:start[cur + 1]].tolist():
                if not used[u]:
                    nxt = u
                    break
            if nxt < 0:
                break
            chain.append(nxt)
            cur = nxt
        if len(chain) == ell + 1:
            used[chain] = True
            pieces.append(chain[::-1])
    return pieces


def disjoint_directed_paths(o: Orientation, ell: int, m: int, beta: float | None = None,
                            strict: bool = True) -> list[VertexPath]:
    """m vertex-disjoint directed paths with ell edges each.

    Dense hosts: each round finds one long directed path in what is left
    and cuts it into pieces of ell + 1 vertices.  Sparse hosts: each round
    layers the remaining digraph once and cuts many tight chains from it.
    """
    n = o.n
    found: list[VertexPath] = []
    if o.host.m * 20 < n * n:
        arcs = np.array(list(o.arcs()), dtype=np.int64).reshape(-1, 2)
        tails, heads = arcs[:, 0], arcs[:, 1]
        alive = np.ones(n, dtype=bool)
        while len(found) < m:
            pieces = _pieces_sparse(n, alive, tails, heads, ell, m - len(found))
            if not pieces:
                break
            for pc in pieces:
                found.append(VertexPath(pc))
                alive[pc] = False
    else:
        out = o.dense_out()
        alive_ids = np.arange(n)
        while len(found) < m:
            sub = out[np.ix_(alive_ids, alive_ids)]
            p = _longest_directed(sub, ell)
            if len(p) < ell + 1:
                break
            used = []
            for j in range(0, len(p) - ell, ell + 1):
                if len(found) == m:
                    break
                found.append(VertexPath(alive_ids[p[j:j + ell + 1]].tolist()))
                used.extend(p[j:j + ell + 1])
            keep = np.ones(len(alive_ids), dtype=bool)
            keep[used] = False
            alive_ids = alive_ids[keep]
    if len(found) < m and strict:
        raise PartialHarvestError(f"harvest stalled at {len(found)} of {m} paths", paths=found)
    return found


def build_linking_digraph(g: Graph, paths) -> Digraph:
    """i -> j iff {last(P_i), first(P_j)} is an edge."""
    m = len(paths)
    arcs = []
    for i, p in enumerate(paths):
        nb = g.nbr_bits(p.last)
        for j, q in enumerate(paths):
            if i != j and nb >> q.first & 1:
                arcs.append((i, j))
    return Digraph(m, arcs)


def _dfs_deepest(d: Digraph, order: list[int]) -> list[int]:
    m = d.m
    visited = [False] * m
    ptr = [0] * m
    best: list[int] = []
    for s in order:
        if visited[s]:
            continue
        visited[s] = True
        stack = [s]
        if len(stack) > len(best):
            best = list(stack)
        while stack:
            v = stack[-1]
            outs = d.out[v]
            i = ptr[v]
            while i < len(outs) and visited[outs[i]]:
                i += 1
            ptr[v] = i
            if i < len(outs):
                w = outs[i]
                visited[w] = True
                stack.append(w)
                if len(stack) > len(best):
                    best = list(stack)
            else:
                stack.pop()
    return best


def dfs_long_path(d: Digraph, k: int | None = None, max_restarts: int | None = None) -> list[int]:
    """Deepest DFS stack, which is a directed path.

    One full DFS already reaches depth m - 2k + 1 when every two disjoint
    k-sets have an arc from the first to the second; further runs from
    other start vertices are tried until that depth or the cap is reached.
    """
    m = d.m
    if m == 0:
        return []
    goal = m if k is None else max(1, m - 2 * k + 2)  # vertices on the path
    cap = m if max_restarts is None else max_restarts
    best = _dfs_deepest(d, list(range(m)))
    for s in range(1, min(cap, m)):
        if len(best) >= goal:
            break
        cand = _dfs_deepest(d, [s] + [v for v in range(m) if v != s])
        if len(cand) > len(best):
            best = cand
    return best


# -- stitching ----------------------------------------------------------


@dataclass
class StitchPlan:
    paths: list
    order: list
    link_edges: list = field(default_factory=list)

    def assemble(self) -> VertexPath:
        verts: list[int] = []
        for i in self.order:
            verts.extend(self.paths[i].verts)
        return VertexPath(verts)


@dataclass
class NearlyForwardResult:
    path: VertexPath
    backward: int
    plan: StitchPlan
    beta: float
    ell: int
    m: int
    k: int
    harvested: int
    bounds_ok: bool = True
    notes: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return self.path.length

    def __iter__(self):
        return iter((self.path, self.backward))


def nearly_forward_path(o: Orientation, delta: float, beta: float | None = None,
                        strict: bool = True) -> NearlyForwardResult:
    """Path of length >= (1-delta)n with <= delta*n backward edges (beta-graph hosts)."""
    g = o.host
    n = g.n
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    beta = choose_beta(delta) if beta is None else beta
    ell, m, k = path_params(beta, n)
    notes = []
    try:
        paths = disjoint_directed_paths(o, ell, m, beta, strict=strict)
    except NotFoundError as exc:
        raise exc.tagged("harvest")
    if len(paths) < m:
        notes.append(f"partial harvest {len(paths)}/{m}")
    if not paths:
        raise PartialHarvestError("no directed path of the required length", paths=[])
    f = build_linking_digraph(g, paths)
    order = dfs_long_path(f, k)
    links = [(paths[i].last, paths[j].first) for i, j in zip(order, order[1:])]
    plan = StitchPlan(paths, order, links)
    path = plan.assemble().validate(g)
    back = path_backward(path, o)
    t = len(order) - 1
    if back > t:
        raise AssertionError("backward edge outside the links")
    ok = path.length >= (1 - delta) * n and back <= delta * n
    res = NearlyForwardResult(path, back, plan, beta, ell, m, k, len(paths), ok, notes)
    if not ok:
        msg = f"length {path.length} (need {(1 - delta) * n:.1f}), backward {back} (max {delta * n:.1f})"
        if strict:
            raise BoundViolationError(msg, result=res)
        notes.append("bounds missed: " + msg)
    return res
