"""Rotation-extension engine.

A path lives in a numpy array ``path[:L]`` with inverse ``pos``.  An
elementary rotation at pivot index ``i`` (the moving end ``x = path[L-1]``
adjacent to ``path[i]``) reverses ``path[i+1:L]``; applying it twice is the
identity, which lets closures be explored depth first with undo.

Protected edges (a linear forest) are never broken by a rotation.  Forest
components are kept whole: a component is entered only at one of its ends
and is then appended in full, so each component is either a contiguous
block of the path or entirely off it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .errors import NotFoundError, ParameterError, RefusalError, StructuralError
from .generators import rng_for
from .graph import Graph, OrientedHamCycle, VertexPath, canon, min_degree


class LinearForest:
    """Edge set whose components are paths."""

    def __init__(self, edges=()):
        es = set()
        for u, v in edges:
            if u == v:
                raise StructuralError(f"forest edge {u}-{v} is a loop")
            es.add(canon(int(u), int(v)))
        self.edges = frozenset(es)
        self._adj: dict[int, list[int]] = {}
        for u, v in sorted(self.edges):
            self._adj.setdefault(u, []).append(v)
            self._adj.setdefault(v, []).append(u)
        for v, ws in self._adj.items():
            if len(ws) > 2:
                raise StructuralError(f"forest vertex {v} has degree {len(ws)}")
        self._comps = self._walk()

    def _walk(self) -> list[tuple[int, ...]]:
        comps, seen = [], set()
        for v in sorted(self._adj):
            if v in seen or len(self._adj[v]) != 1:
                continue
            comp, prev, cur = [v], -1, v
            seen.add(v)
            while True:
                nxt = [w for w in self._adj[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                comp.append(cur)
                seen.add(cur)
            comps.append(tuple(comp))
        if len(seen) != len(self._adj):
            raise StructuralError("forest edges contain a cycle")
        return comps

    @property
    def t(self) -> int:
        return len(self.edges)

    def components(self) -> list[tuple[int, ...]]:
        """Vertex sequences of the non-trivial path components."""
        return list(self._comps)

    def partners(self, v: int) -> list[int]:
        return list(self._adj.get(v, ()))

    def vertices(self) -> set[int]:
        return set(self._adj)

    def validate(self, g: Graph) -> "LinearForest":
        for u, v in self.edges:
            if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
                raise StructuralError(f"forest edge {u}-{v} is not an edge of the host")
        return self

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"LinearForest({sorted(self.edges)})"


def _as_forest(f) -> LinearForest:
    if f is None:
        return LinearForest()
    return f if isinstance(f, LinearForest) else LinearForest(f)


def _replay(verts: list[int], parent: dict, r: int) -> list[int]:
    """Apply the recorded pivots leading to end ``r`` on a plain list."""
    chain = []
    while parent[r] is not None:
        prev, pivot = parent[r]
        chain.append(pivot)
        r = prev
    p = list(verts)
    for pivot in reversed(chain):
        i = p.index(pivot)
        p[i + 1:] = p[i + 1:][::-1]
    return p


@dataclass
class RotationState:
    """Closure of rotations of ``path`` with ``fixed_end`` held.

    ``parent[r] = (previous end, pivot vertex)`` records how ``r`` was
    first reached; ``reconstruct`` replays the pivots from ``path``.
    """

    path: VertexPath
    fixed_end: int
    reachable_ends: set
    parent: dict = field(repr=False)
    order: list = field(default_factory=list, repr=False)
    witness: dict | None = field(default=None, repr=False)

    def reconstruct(self, r: int) -> VertexPath:
        if self.witness is not None:
            if r not in self.witness:
                raise KeyError(f"{r} is not a reachable end")
            return VertexPath(self.witness[r])
        if r not in self.parent:
            raise KeyError(f"{r} is not a reachable end")
        return VertexPath(_replay(list(self.path.verts), self.parent, r))


@dataclass(frozen=True)
class Booster:
    u: int
    v: int


@dataclass
class StepResult:
    """Outcome of ``extend_or_rotate``: kind is 'longer', 'cycle' or 'stuck'."""

    kind: str
    path: VertexPath | None = None
    cycle: OrientedHamCycle | None = None
    states: tuple = ()


class _Budget(Exception):
    pass


class _Engine:
    def __init__(self, g: Graph, forest: LinearForest | None = None, budget: int | None = None):
        n = g.n
        self.g = g
        self.n = n
        self.nbrs = [g.neighbors(v) for v in range(n)]
        self.nbr_arr = [np.asarray(nb, dtype=np.int64) for nb in self.nbrs]
        forest = forest or LinearForest()
        self.prot: list = [()] * n
        self.interior = [False] * n
        self.block: dict[int, tuple[int, ...]] = {}
        for comp in forest.components():
            self.block[comp[0]] = comp
            self.block[comp[-1]] = comp[::-1]
            for v in comp[1:-1]:
                self.interior[v] = True
        for v in forest.vertices():
            self.prot[v] = tuple(forest.partners(v))
        self.path = np.zeros(n, dtype=np.int64)
        self.pos = np.full(n, -1, dtype=np.int64)
        self.L = 0
        self.free_deg = np.array(g.degrees(), dtype=np.int64)
        self.budget = budget if budget is not None else 20 * n * n
        self.steps = 0

    # -- primitive moves --------------------------------------------------

    def set_path(self, verts) -> None:
        verts = np.asarray(list(verts), dtype=np.int64)
        self.pos[:] = -1
        self.free_deg = np.array(self.g.degrees(), dtype=np.int64)
        self.L = len(verts)
        self.path[: self.L] = verts
        self.pos[verts] = np.arange(self.L)
        for v in verts.tolist():
            self.free_deg[self.nbr_arr[v]] -= 1

    def verts(self) -> list[int]:
        return self.path[: self.L].tolist()

    def protected(self, u: int, v: int) -> bool:
        return v in self.prot[u]

    def enterable(self, w: int) -> bool:
        return self.pos[w] < 0 and not self.interior[w]

    def append(self, w: int) -> None:
        for v in self.block.get(w, (w,)):
            self.path[self.L] = v
            self.pos[v] = self.L
            self.L += 1
            self.free_deg[self.nbr_arr[v]] -= 1
        self.steps = 0

    def reverse(self) -> None:
        L = self.L
        seg = self.path[:L][::-1].copy()
        self.path[:L] = seg
        self.pos[seg] = np.arange(L)

    def rotate(self, i: int) -> None:
        L = self.L
        seg = self.path[i + 1:L][::-1].copy()
        self.path[i + 1:L] = seg
        self.pos[seg] = np.arange(i + 1, L)

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise _Budget()

    # -- growth -----------------------------------------------------------

    def best_entry(self, x: int) -> int:
        """Enterable neighbour of x with fewest off-path neighbours, or -1."""
        best, key = -1, None
        pos, interior, fd = self.pos, self.interior, self.free_deg
        for w in self.nbrs[x]:
            if pos[w] < 0 and not interior[w]:
                k = fd[w]
                if key is None or k < key:
                    best, key = w, k
        return best

    def try_extend(self) -> bool:
        if self.L == 0:
            return False
        w = self.best_entry(int(self.path[self.L - 1]))
        if w >= 0:
            self.append(w)
            return True
        w = self.best_entry(int(self.path[0]))
        if w >= 0:
            self.reverse()
            self.append(w)
            return True
        return False

    def closable(self) -> bool:
        L = self.L
        return L >= 3 and self.g.has_edge(int(self.path[0]), int(self.path[L - 1]))

    def can_open(self) -> bool:
        on = self.path[: self.L]
        for u in on[self.free_deg[on] > 0].tolist():
            if not self.interior[u] and self.best_entry(u) >= 0:
                return True
        return False

    def open_cycle(self) -> bool:
        """Break the closed cycle next to a vertex with an enterable neighbour."""
        L = self.L
        on = self.path[:L]
        for idx in np.flatnonzero(self.free_deg[on] > 0).tolist():
            u = int(on[idx])
            w = self.best_entry(u)
            if w < 0:
                continue
            nxt = int(on[(idx + 1) % L])
            prv = int(on[idx - 1])
            cyc = on.tolist()
            if not self.protected(u, nxt):
                order = cyc[idx + 1:] + cyc[: idx + 1]
            elif not self.protected(prv, u):
                order = (cyc[idx:] + cyc[:idx])[::-1]
            else:
                continue
            self.path[:L] = order
            self.pos[self.path[:L]] = np.arange(L)
            self.append(w)
            return True
        return False

    def explore(self, check: Callable[[int], bool] | None):
        """Depth-first rotation closure of the moving end, path[0] fixed.

        Returns ``(hit, parent, order)``.  On a hit the engine is left in
        the state whose end satisfied ``check``; otherwise it is restored.
        """
        L = self.L
        path, pos = self.path, self.pos
        root = int(path[L - 1])
        parent = {root: None}
        order = [root]
        if check is not None and check(root):
            return root, parent, order
        stack = [[root, 0, -1]]
        while stack:
            frame = stack[-1]
            x, k, piv = frame
            nb = self.nbrs[x]
            moved = False
            while k < len(nb):
                y = nb[k]
                k += 1
                i = int(pos[y])
                if i < 0 or i > L - 3:
                    continue
                z = int(path[i + 1])
                if z in parent or z in self.prot[y]:
                    continue
                self.tick()
                frame[1] = k
                self.rotate(i)
                parent[z] = (x, y)
                order.append(z)
                if check is not None and check(z):
                    return z, parent, order
                stack.append([z, 0, i])
                moved = True
                break
            if not moved:
                stack.pop()
                if piv >= 0:
                    self.rotate(piv)
        return None, parent, order

    def restore(self, base: list[int], parent: dict, r: int) -> None:
        L = self.L
        self.path[:L] = base
        self.pos[self.path[:L]] = np.arange(L)
        chain = []
        while parent[r] is not None:
            prev, pivot = parent[r]
            chain.append(pivot)
            r = prev
        for pivot in reversed(chain):
            self.rotate(int(self.pos[pivot]))

    def search(self, deep: bool = True) -> bool:
        """Rotate until an end can be extended or the path closes."""
        allow_close = self.L == self.n or self.can_open()

        def check(z: int) -> bool:
            if self.best_entry(z) >= 0:
                return True
            return allow_close and self.L >= 3 and self.g.has_edge(z, int(self.path[0]))

        hit, _, _ = self.explore(check)
        if hit is not None:
            return True
        self.reverse()
        hit, parent, order = self.explore(check)
        if hit is not None:
            return True
        if not deep:
            return False
        base = self.verts()
        for r in order[1:]:
            self.restore(base, parent, r)
            self.reverse()
            hit, _, _ = self.explore(check)
            if hit is not None:
                return True
        self.path[: self.L] = base
        self.pos[self.path[: self.L]] = np.arange(self.L)
        return False

    def grow(self, start: list[int] | None = None) -> str:
        """Run rotation-extension to a Hamilton cycle; 'cycle' or 'stuck'."""
        if start is None:
            comps = sorted(set(self.block.values()))
            if comps:
                start = list(comps[0])
            else:
                start = [int(np.argmin(self.free_deg))]
        self.set_path(start)
        self.steps = 0
        while True:
            if self.try_extend():
                continue
            if self.closable():
                if self.L == self.n:
                    return "cycle"
                if self.open_cycle():
                    continue
                return "stuck"
            if not self.search():
                return "stuck"


def _closure_state(eng: _Engine, check=None) -> RotationState:
    base = eng.verts()
    hit, parent, order = eng.explore(check)
    return RotationState(VertexPath(base), base[0], set(order), parent, order)


def _full_closure(g: Graph, vs: list[int], forest: LinearForest, max_states: int) -> RotationState:
    start = tuple(vs)
    seen = {start}
    todo = [start]
    witness = {start[-1]: start}
    order = [start[-1]]
    while todo and len(witness) < len(vs) - 1:
        p = todo.pop()
        end = p[-1]
        for i in range(len(p) - 2):
            if g.has_edge(p[i], end) and canon(p[i], p[i + 1]) not in forest.edges:
                q = p[: i + 1] + p[i + 1:][::-1]
                if q not in seen:
                    if len(seen) >= max_states:
                        raise RefusalError(f"rotation closure exceeds {max_states} paths")
                    seen.add(q)
                    todo.append(q)
                    if q[-1] not in witness:
                        witness[q[-1]] = q
                        order.append(q[-1])
    return RotationState(VertexPath(vs), vs[0], set(witness), {}, order, witness)


def rotation_closure(g: Graph, p: VertexPath, fixed_end: int, protected=None, full: bool = False,
                     max_states: int = 200_000) -> RotationState:
    """Ends reachable from ``p`` by rotations that keep ``fixed_end`` and protected edges.

    By default each end is rotated from one representative path (the first
    that reached it), which is polynomial and closed enough for the Posa
    bound.  ``full=True`` rotates every distinct path instead (exponential;
    refuses beyond ``max_states`` paths).
    """
    forest = _as_forest(protected).validate(g)
    p = p if isinstance(p, VertexPath) else VertexPath(p)
    p.validate(g)
    vs = list(p.verts)
    if fixed_end == vs[-1]:
        vs.reverse()
    elif fixed_end != vs[0]:
        raise StructuralError(f"{fixed_end} is not an endpoint of the path")
    if full:
        return _full_closure(g, vs, forest, max_states)
    eng = _Engine(g, forest, budget=math.inf)
    eng.set_path(vs)
    return _closure_state(eng)


def extend_or_rotate(g: Graph, p: VertexPath, protected=None) -> StepResult:
    """One rotation-extension step from ``p``."""
    forest = _as_forest(protected).validate(g)
    p = p if isinstance(p, VertexPath) else VertexPath(p)
    p.validate(g)
    eng = _Engine(g, forest, budget=math.inf)
    eng.set_path(p.verts)
    if eng.try_extend():
        return StepResult("longer", path=VertexPath(eng.verts()))
    if eng.closable():
        return StepResult("cycle", cycle=OrientedHamCycle(eng.verts()))
    allow = True

    def check(z: int) -> bool:
        return eng.best_entry(z) >= 0 or (allow and eng.L >= 3 and g.has_edge(z, int(eng.path[0])))

    for side in range(2):
        if side:
            eng.reverse()
        hit, _, _ = eng.explore(check)
        if hit is not None:
            if eng.try_extend():
                return StepResult("longer", path=VertexPath(eng.verts()))
            return StepResult("cycle", cycle=OrientedHamCycle(eng.verts()))
    # stuck: report both closures, each with its own end held fixed
    eng.set_path(p.verts)
    a = _closure_state(eng)
    eng.set_path(p.verts[::-1])
    b = _closure_state(eng)
    return StepResult("stuck", path=p, states=(a, b))


def _exhaustive_cycle_through(g: Graph, forest: LinearForest) -> list[int] | None:
    n = g.n
    nb = [g.nbr_bits(v) for v in range(n)]
    prot = [set(forest.partners(v)) for v in range(n)]
    full = (1 << n) - 1
    path = [0]

    def ok_edge(prev: int, v: int, nxt: int) -> bool:
        return prot[v] <= {prev, nxt}

    def walk(v: int, seen: int) -> bool:
        if seen == full:
            if not nb[v] & 1:
                return False
            return ok_edge(path[-2], v, 0) and ok_edge(v, 0, path[1])
        cand = nb[v] & ~seen
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            if len(path) >= 2 and not ok_edge(path[-2], v, w):
                continue
            path.append(w)
            if walk(w, seen | low):
                return True
            path.pop()
        return False

    return list(path) if walk(0, 1) else None


def _check_cycle(g: Graph, verts, forest: LinearForest) -> OrientedHamCycle:
    c = OrientedHamCycle(verts).validate(g)
    missing = forest.edges - c.edges()
    if missing:
        raise AssertionError(f"cycle misses forest edges {sorted(missing)}")
    return c


def hamilton_cycle_through_forest(g: Graph, f=None, t: int | None = None, budget: int | None = None) -> OrientedHamCycle:
    """Hamilton cycle of g containing every edge of the linear forest f."""
    forest = _as_forest(f).validate(g)
    n = g.n
    t = forest.t if t is None else t
    reason = "budget" if n >= 3 and 2 * min_degree(g) >= n + t else "precondition"
    if n < 3:
        raise NotFoundError("a Hamilton cycle needs n >= 3", stage="posa", reason="precondition")
    eng = _Engine(g, forest, budget)
    try:
        if eng.grow() == "cycle":
            return _check_cycle(g, eng.verts(), forest)
    except _Budget:
        pass
    if n <= 10:
        found = _exhaustive_cycle_through(g, forest)
        if found is not None:
            return _check_cycle(g, found, forest)
        reason = "precondition"
    raise NotFoundError("no Hamilton cycle through the forest found", stage="posa", reason=reason,
                        path_length=eng.L)


def find_boosters(g: Graph, frontier, verify: bool | None = None) -> list[Booster]:
    """Non-edges {r, s} where r, s are the two ends of some path on V(P).

    ``frontier`` is a RotationState (or a pair of them) of a longest path.
    For n <= 10 each candidate is checked against the definition.
    """
    states = frontier if isinstance(frontier, (tuple, list)) else (frontier,)
    found: set = set()
    for st in states:
        for r in st.order:
            pr = st.reconstruct(r)
            second = rotation_closure(g, pr, r)
            for s in second.reachable_ends:
                if s != r and not g.has_edge(r, s):
                    found.add(canon(r, s))
    out = [Booster(u, v) for u, v in sorted(found)]
    if verify is None:
        verify = g.n <= 10
    if verify:
        from .oracle import is_booster

        out = [b for b in out if is_booster(g, b.u, b.v)]
    return out


def sparse_out_subgraph(g: Graph, d0: int, seed: int) -> Graph:
    """Keep all edges at vertices of degree < d0, else d0 random incident edges each."""
    rng = rng_for(seed, "sparse-subgraph")
    keep = set()
    for v in range(g.n):
        nb = g.neighbors(v)
        if len(nb) <= d0:
            chosen = nb
        else:
            chosen = [nb[i] for i in rng.choice(len(nb), size=d0, replace=False).tolist()]
        for w in chosen:
            keep.add(canon(v, w))
    return Graph(g.n, sorted(keep))


def make_hamiltonian_via_boosters(host: Graph, w_set, d0: int | None = None, seed: int = 0,
                                  budget: int | None = None) -> OrientedHamCycle:
    """Hamilton cycle of host[w_set], in host labels.

    By default the engine runs on host[w_set] itself.  With ``d0`` it starts
    from a sparse d0-out subgraph and adds boosters taken from host[w_set]
    whenever growth stalls.
    """
    ids = sorted(set(int(v) for v in w_set))
    sub, ids = host.induced(ids)
    k = sub.n
    if k < 3:
        raise NotFoundError("a Hamilton cycle needs at least 3 vertices", stage="boosters", reason="precondition")
    h = sparse_out_subgraph(sub, d0, seed) if d0 else sub
    for _ in range(2 * k + 1):
        eng = _Engine(h, budget=budget)
        try:
            status = eng.grow()
        except _Budget:
            status = "stuck"
        if status == "cycle":
            OrientedHamCycle(eng.verts()).validate(sub)
            return OrientedHamCycle([ids[v] for v in eng.verts()])
        if h is sub:
            raise NotFoundError("growth stalled on the induced subgraph", stage="boosters",
                                reason="precondition", path_length=eng.L)
        p = VertexPath(eng.verts())
        states = (rotation_closure(h, p, p.first), rotation_closure(h, p, p.last))
        usable = [b for b in find_boosters(h, states, verify=False) if sub.has_edge(b.u, b.v)]
        if not usable:
            raise NotFoundError("no booster of the sparse subgraph lies in the host", stage="boosters",
                                reason="precondition", path_length=eng.L)
        b = usable[0]
        h = Graph(k, list(h.edges()) + [(b.u, b.v)])
    raise NotFoundError("booster iterations exhausted", stage="boosters", reason="budget")


def hamilton_path_endpoint_set(host: Graph, w_set, w: int, cycle: OrientedHamCycle | None = None):
    """(Y, retrieve): Hamilton paths of host[w_set] from w to each y in Y."""
    w_list = sorted(set(int(v) for v in w_set))
    if w not in w_list:
        raise ParameterError(f"{w} is not in the vertex set")
    if cycle is None:
        cycle = make_hamiltonian_via_boosters(host, w_list)
    vs = list(cycle.verts)
    if sorted(vs) != w_list:
        raise StructuralError("cycle does not span the vertex set")
    i = vs.index(w)
    start = vs[i:] + vs[:i]
    sub, ids = host.induced(w_list)
    local = {v: j for j, v in enumerate(ids)}
    st = rotation_closure(sub, VertexPath([local[v] for v in start]), local[w])
    ends = {ids[r] for r in st.reachable_ends}

    def retrieve(y: int) -> VertexPath:
        return VertexPath([ids[v] for v in st.reconstruct(local[y]).verts])

    return ends, retrieve


def expander_witness(g: Graph, k: int, limit: int = 20):
    """A set U with |U| <= k and |N(U)| < 2|U|, or None (exact, n <= limit)."""
    n = g.n
    if n > limit:
        raise RefusalError(f"n={n} exceeds the subset-enumeration limit {limit}")
    nb = [g.nbr_bits(v) for v in range(n)]
    for size in range(1, min(k, n) + 1):
        for us in combinations(range(n), size):
            ub, reach = 0, 0
            for v in us:
                ub |= 1 << v
                reach |= nb[v]
            if (reach & ~ub).bit_count() < 2 * size:
                return set(us)
    return None


def is_k2_expander(g: Graph, k: int, limit: int = 20) -> bool:
    return expander_witness(g, k, limit) is None


@dataclass
class ExpanderVerdict:
    """Per-condition outcome: 'pass', 'fail' or 'inconclusive' (sampled, no violation)."""

    status: str
    conditions: dict
    witness: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == "pass"


def _low_degree_condition(g: Graph, d: int):
    low = [v for v in range(g.n) if g.degree(v) < d]
    low_bits = sum(1 << v for v in low)
    for v in low:
        nb = g.neighbors(v)
        vb = g.nbr_bits(v)
        for u in nb:
            if g.nbr_bits(u) & vb:
                return ("triangle", v)
        for u, w in combinations(nb, 2):
            if (g.nbr_bits(u) & g.nbr_bits(w)) & ~(1 << v):
                return ("four-cycle", v)
        seen = 1 << v
        frontier = 1 << v
        for _ in range(4):
            nxt = 0
            f = frontier
            while f:
                lo = f & -f
                f ^= lo
                nxt |= g.nbr_bits(lo.bit_length() - 1)
            nxt &= ~seen
            if nxt & low_bits:
                return ("close-pair", v)
            seen |= nxt
            frontier = nxt
    return None


def _subset_edge_counts(g: Graph) -> np.ndarray:
    n = g.n
    e = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        lo = np.arange(1 << v, dtype=np.uint64)
        e[(1 << v):(2 << v)] = e[: 1 << v] + np.bitwise_count(lo & np.uint64(g.nbr_bits(v)))
    return e


def expander_sufficient_check(g: Graph, m: int, d: int, samples: int = 2000, seed: int = 0,
                              limit: int = 20) -> ExpanderVerdict:
    """The four sufficient conditions for a (h/4, 2)-expander.

    Conditions 3 and 4 are universal over subsets; they are exact for
    n <= limit and sampled (so at best 'inconclusive') above it.
    """
    h = g.n
    if m < 1 or d < 1:
        raise ParameterError("m and d must be positive")
    if h < 4 * m:
        raise ParameterError(f"need h >= 4m, got h={h}, m={m}")
    conds, wit = {}, {}
    conds["min-degree"] = "pass" if min_degree(g) >= 2 else "fail"
    bad = _low_degree_condition(g, d)
    conds["low-degree"] = "pass" if bad is None else "fail"
    if bad:
        wit["low-degree"] = bad
    exact = h <= limit
    if exact:
        e = _subset_edge_counts(g)
        size = np.bitwise_count(np.arange(1 << h, dtype=np.uint64)).astype(np.int64)
        viol = np.flatnonzero((size <= 5 * m) & (10 * e > d * size))
        conds["sparse-sets"] = "fail" if len(viol) else "pass"
        if len(viol):
            wit["sparse-sets"] = {v for v in range(h) if int(viol[0]) >> v & 1}
        from .oracle import is_beta_graph

        ok, pair = is_beta_graph(g, m / h)
        conds["edge-between"] = "pass" if ok else "fail"
        if pair:
            wit["edge-between"] = pair
    else:
        rng = rng_for(seed, "sampling")
        conds["sparse-sets"] = "inconclusive"
        for _ in range(samples):
            size = int(rng.integers(2, min(5 * m, h) + 1))
            # grow a connected-ish set: denser than a uniform one
            us = {int(rng.integers(h))}
            while len(us) < size:
                v = list(us)[int(rng.integers(len(us)))]
                nb = g.neighbors(v)
                us.add(int(nb[int(rng.integers(len(nb)))]) if nb else int(rng.integers(h)))
            ub = sum(1 << v for v in us)
            edges = sum((g.nbr_bits(v) & ub).bit_count() for v in us) // 2
            if 10 * edges > d * len(us):
                conds["sparse-sets"] = "fail"
                wit["sparse-sets"] = us
                break
        conds["edge-between"] = "inconclusive"
        for _ in range(samples):
            pick = rng.permutation(h)[: 2 * m].tolist()
            wb = sum(1 << v for v in pick[m:])
            if not any(g.nbr_bits(u) & wb for u in pick[:m]):
                conds["edge-between"] = "fail"
                wit["edge-between"] = (set(pick[:m]), set(pick[m:]))
                break
    vals = set(conds.values())
    status = "fail" if "fail" in vals else ("inconclusive" if "inconclusive" in vals else "pass")
    return ExpanderVerdict(status, conds, wit)
