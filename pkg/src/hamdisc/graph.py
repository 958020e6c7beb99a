"""Graphs, orientations, paths and cycles with forward-edge accounting.

Vertices are the integers ``0..n-1``.  Adjacency is held as one Python
``int`` bitmask per vertex, which keeps membership tests O(1) and makes
common-neighbour counts a single ``&`` plus ``bit_count``.  Neighbour
tuples and a dense numpy matrix are derived lazily and cached.

An orientation stores out-neighbour bitmasks.  For a canonical edge
``(u, v)`` with ``u < v`` the direction bit is ``True`` when ``u -> v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import StructuralError

Edge = tuple[int, int]

# rows with more set bits than this are decoded through numpy
_NUMPY_DECODE = 48


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def bits_of(vertices: Iterable[int]) -> int:
    b = 0
    for v in vertices:
        b |= 1 << v
    return b


def decode_bits(b: int, n: int | None = None) -> list[int]:
    """Sorted list of the set bit positions of ``b``."""
    if b.bit_count() > _NUMPY_DECODE:
        nbytes = (b.bit_length() + 7) // 8
        arr = np.frombuffer(b.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.flatnonzero(np.unpackbits(arr, bitorder="little")).tolist()
    out = []
    while b:
        low = b & -b
        out.append(low.bit_length() - 1)
        b ^= low
    return out


def _rows_to_bits(rows: np.ndarray) -> list[int]:
    packed = np.packbits(rows.astype(bool, copy=False), axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def _bits_to_rows(bits: Sequence[int], n: int) -> np.ndarray:
    nbytes = max(1, (n + 7) // 8)
    buf = b"".join(b.to_bytes(nbytes, "little") for b in bits)
    arr = np.frombuffer(buf, dtype=np.uint8).reshape(len(bits), nbytes)
    return np.unpackbits(arr, axis=1, bitorder="little")[:, :n].astype(bool)


class Graph:
    """Undirected simple graph on ``0..n-1``; immutable after construction."""

    __slots__ = ("n", "_bits", "_m", "_nbrs", "_dense", "_deg")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise StructuralError(f"negative vertex count {n}")
        bits = [0] * n
        m = 0
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise StructuralError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise StructuralError(f"edge ({u}, {v}) out of range for n={n}")
            if (bits[u] >> v) & 1:
                raise StructuralError(f"duplicate edge ({u}, {v})")
            bits[u] |= 1 << v
            bits[v] |= 1 << u
            m += 1
        self._init(n, bits, m)

    def _init(self, n: int, bits: list[int], m: int) -> None:
        self.n = n
        self._bits = bits
        self._m = m
        self._nbrs: list[tuple[int, ...] | None] = [None] * n
        self._dense: np.ndarray | None = None
        self._deg: list[int] | None = None

    @classmethod
    def from_bits(cls, n: int, bits: Sequence[int], validate: bool = True) -> "Graph":
        bits = list(bits)
        if len(bits) != n:
            raise StructuralError("bitmask count differs from n")
        if validate:
            full = (1 << n) - 1
            for u, b in enumerate(bits):
                if b & ~full or b < 0:
                    raise StructuralError(f"neighbour of {u} out of range")
                if (b >> u) & 1:
                    raise StructuralError(f"self-loop at {u}")
            if n <= 4096:
                for u, b in enumerate(bits):
                    for v in decode_bits(b):
                        if not (bits[v] >> u) & 1:
                            raise StructuralError(f"asymmetric adjacency {u}-{v}")
            else:
                rows = _bits_to_rows(bits, n)
                if not np.array_equal(rows, rows.T):
                    raise StructuralError("asymmetric adjacency")
        m = sum(b.bit_count() for b in bits) // 2
        g = cls.__new__(cls)
        g._init(n, bits, m)
        return g

    @classmethod
    def from_dense(cls, adj: np.ndarray) -> "Graph":
        adj = np.asarray(adj, dtype=bool)
        n = adj.shape[0]
        if adj.shape != (n, n):
            raise StructuralError("adjacency matrix must be square")
        if np.any(np.diag(adj)):
            raise StructuralError("self-loop in adjacency matrix")
        if not np.array_equal(adj, adj.T):
            raise StructuralError("adjacency matrix not symmetric")
        g = cls.__new__(cls)
        g._init(n, _rows_to_bits(adj), int(adj.sum()) // 2)
        g._dense = adj
        return g

    # -- queries --------------------------------------------------------

    @property
    def m(self) -> int:
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._bits[u] >> v) & 1)

    def nbr_bits(self, u: int) -> int:
        return self._bits[u]

    def neighbors(self, u: int) -> tuple[int, ...]:
        nb = self._nbrs[u]
        if nb is None:
            nb = tuple(decode_bits(self._bits[u]))
            self._nbrs[u] = nb
        return nb

    def degree(self, u: int) -> int:
        return self.degrees()[u]

    def degrees(self) -> list[int]:
        if self._deg is None:
            self._deg = [b.bit_count() for b in self._bits]
        return self._deg

    def edges(self) -> Iterator[Edge]:
        """Canonical edges in lexicographic order."""
        for u in range(self.n):
            for v in decode_bits(self._bits[u] >> (u + 1)):
                yield (u, u + 1 + v)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Canonical edges as two int arrays, lexicographic order."""
        if self._dense is not None or (self.n and self._m > 16 * self.n):
            us, vs = np.nonzero(np.triu(self.dense(), 1))
            return us.astype(np.int64), vs.astype(np.int64)
        us, vs = [], []
        for u, v in self.edges():
            us.append(u)
            vs.append(v)
        return np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)

    def dense(self) -> np.ndarray:
        if self._dense is None:
            self._dense = _bits_to_rows(self._bits, self.n)
        return self._dense

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Subgraph induced on ``vertices``, relabelled ``0..k-1`` in the given order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        ids = list(vertices)
        k = len(ids)
        if len(set(ids)) != k:
            raise StructuralError("repeated vertex in induced()")
        if self._dense is not None or (self.n and self._m > 16 * self.n):
            idx = np.asarray(ids, dtype=np.int64)
            sub = Graph.from_dense(self.dense()[np.ix_(idx, idx)])
            return sub, ids
        new = {v: i for i, v in enumerate(ids)}
        mask = bits_of(ids)
        bits = [0] * k
        for i, v in enumerate(ids):
            b = 0
            for w in decode_bits(self._bits[v] & mask):
                b |= 1 << new[w]
            bits[i] = b
        return Graph.from_bits(k, bits, validate=False), ids

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._bits == other._bits

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._bits)))


def min_degree(g: Graph) -> int:
    return min(g.degrees(), default=0)


def max_degree(g: Graph) -> int:
    return max(g.degrees(), default=0)


def edge_count(g: Graph) -> int:
    return g.m


def neighborhood(g: Graph, vertices: Iterable[int]) -> set[int]:
    """External neighbourhood N(U): vertices outside U adjacent to U."""
    u_bits = bits_of(vertices)
    acc = 0
    for v in decode_bits(u_bits):
        acc |= g.nbr_bits(v)
    return set(decode_bits(acc & ~u_bits))


class Orientation:
    """A direction for every edge of ``host``; immutable."""

    __slots__ = ("host", "_out", "_in", "_dense")

    def __init__(self, host: Graph, out_bits: Sequence[int], validate: bool = True):
        out = list(out_bits)
        if len(out) != host.n:
            raise StructuralError("orientation size differs from host")
        self.host = host
        self._out = out
        self._in: list[int] | None = None
        self._dense: np.ndarray | None = None
        if validate:
            self._validate()

    def _validate(self) -> None:
        g = self.host
        for u, b in enumerate(self._out):
            if b & ~g.nbr_bits(u):
                raise StructuralError(f"arc from {u} to a non-neighbour")
        inn = self.in_bits_all()
        for u in range(g.n):
            if self._out[u] & inn[u]:
                raise StructuralError(f"edge at {u} oriented both ways")
            if self._out[u] | inn[u] != g.nbr_bits(u):
                raise StructuralError(f"edge at {u} left unoriented")

    @classmethod
    def from_dir_bits(cls, host: Graph, dir_bits: Sequence[int] | np.ndarray) -> "Orientation":
        """Build from one bit per canonical edge, lexicographic edge order."""
        us, vs = host.edge_arrays()
        d = np.asarray(dir_bits, dtype=bool)
        if d.shape != us.shape:
            raise StructuralError(f"expected {len(us)} direction bits, got {d.size}")
        tails = np.where(d, us, vs)
        heads = np.where(d, vs, us)
        return cls._from_arc_arrays(host, tails, heads)

    @classmethod
    def _from_arc_arrays(cls, host: Graph, tails: np.ndarray, heads: np.ndarray) -> "Orientation":
        n = host.n
        if len(tails) > 16 * max(n, 1):
            rows = np.zeros((n, n), dtype=bool)
            rows[tails, heads] = True
            o = cls(host, _rows_to_bits(rows), validate=False)
            o._dense = rows
            return o
        out = [0] * n
        for t, h in zip(tails.tolist(), heads.tolist()):
            out[t] |= 1 << h
        return cls(host, out, validate=False)

    @classmethod
    def from_arcs(cls, host: Graph, arcs: Iterable[Sequence[int]]) -> "Orientation":
        out = [0] * host.n
        for a in arcs:
            u, v = int(a[0]), int(a[1])
            if not (0 <= u < host.n and 0 <= v < host.n) or not host.has_edge(u, v):
                raise StructuralError(f"arc ({u}, {v}) is not a host edge")
            if (out[u] >> v) & 1 or (out[v] >> u) & 1:
                raise StructuralError(f"edge {canon(u, v)} oriented twice")
            out[u] |= 1 << v
        o = cls(host, out, validate=False)
        o._validate()
        return o

    @classmethod
    def from_dense(cls, host: Graph, out: np.ndarray) -> "Orientation":
        out = np.asarray(out, dtype=bool)
        adj = host.dense()
        if out.shape != adj.shape or np.any(out & out.T) or not np.array_equal(out | out.T, adj):
            raise StructuralError("dense orientation does not match host")
        o = cls(host, _rows_to_bits(out), validate=False)
        o._dense = out
        return o

    @property
    def n(self) -> int:
        return self.host.n

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self._out[u] >> v) & 1)

    def direction(self, u: int, v: int) -> bool:
        """Bit of canonical edge {u, v}: True when min -> max."""
        a, b = canon(u, v)
        if not self.host.has_edge(a, b):
            raise StructuralError(f"({u}, {v}) is not a host edge")
        return self.has_arc(a, b)

    def out_bits(self, u: int) -> int:
        return self._out[u]

    def in_bits(self, u: int) -> int:
        return self.in_bits_all()[u]

    def in_bits_all(self) -> list[int]:
        if self._in is None:
            g = self.host
            if self._dense is not None or (g.n and g.m > 16 * g.n):
                self._in = _rows_to_bits(self.dense_out().T)
            else:
                inn = [0] * g.n
                for u, b in enumerate(self._out):
                    for v in decode_bits(b):
                        inn[v] |= 1 << u
                self._in = inn
        return self._in

    def dense_out(self) -> np.ndarray:
        if self._dense is None:
            self._dense = _bits_to_rows(self._out, self.n)
        return self._dense

    def arcs(self) -> Iterator[Edge]:
        for u in range(self.n):
            for v in decode_bits(self._out[u]):
                yield (u, v)

    def dir_bits(self) -> list[int]:
        """Direction bits in canonical edge order."""
        return [int(self.has_arc(u, v)) for u, v in self.host.edges()]

    def induced(self, vertices: Iterable[int]) -> tuple["Orientation", list[int]]:
        sub, ids = self.host.induced(vertices)
        if sub._dense is not None:
            idx = np.asarray(ids, dtype=np.int64)
            out = self.dense_out()[np.ix_(idx, idx)]
            o = Orientation(sub, _rows_to_bits(out), validate=False)
            o._dense = out
            return o, ids
        new = {v: i for i, v in enumerate(ids)}
        mask = bits_of(ids)
        out = [0] * len(ids)
        for i, v in enumerate(ids):
            b = 0
            for w in decode_bits(self._out[v] & mask):
                b |= 1 << new[w]
            out[i] = b
        return Orientation(sub, out, validate=False), ids

    def reversed(self) -> "Orientation":
        return Orientation(self.host, self.in_bits_all(), validate=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Orientation) and self.host == other.host and self._out == other._out

    def __hash__(self) -> int:
        return hash(tuple(self._out))

    def __repr__(self) -> str:
        return f"Orientation(n={self.n}, m={self.host.m})"


@dataclass(frozen=True)
class VertexPath:
    verts: tuple[int, ...]

    def __init__(self, verts: Iterable[int]):
        object.__setattr__(self, "verts", tuple(int(v) for v in verts))

    @property
    def length(self) -> int:
        return max(len(self.verts) - 1, 0)

    @property
    def first(self) -> int:
        return self.verts[0]

    @property
    def last(self) -> int:
        return self.verts[-1]

    def reversed(self) -> "VertexPath":
        return VertexPath(self.verts[::-1])

    def edges(self) -> list[Edge]:
        vs = self.verts
        return [canon(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    def validate(self, g: Graph) -> "VertexPath":
        vs = self.verts
        if not vs:
            raise StructuralError("empty path")
        if len(set(vs)) != len(vs):
            raise StructuralError("path repeats a vertex")
        for v in vs:
            if not 0 <= v < g.n:
                raise StructuralError(f"path vertex {v} out of range")
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                raise StructuralError(f"path step {a}-{b} is not an edge")
        return self

    def __len__(self) -> int:
        return len(self.verts)

    def __iter__(self):
        return iter(self.verts)


@dataclass(frozen=True)
class OrientedHamCycle:
    """Hamilton cycle traversed in the order of ``verts`` (wrapping)."""

    verts: tuple[int, ...]

    def __init__(self, verts: Iterable[int]):
        object.__setattr__(self, "verts", tuple(int(v) for v in verts))

    @property
    def n(self) -> int:
        return len(self.verts)

    def reversed(self) -> "OrientedHamCycle":
        return OrientedHamCycle(self.verts[::-1])

    def steps(self) -> list[Edge]:
        """Ordered traversal pairs (v_i, v_{i+1}), indices mod n."""
        vs = self.verts
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edges(self) -> set[Edge]:
        return {canon(a, b) for a, b in self.steps()}

    def validate(self, g: Graph) -> "OrientedHamCycle":
        vs = self.verts
        if len(vs) != g.n or g.n < 3:
            raise StructuralError(f"cycle has {len(vs)} vertices, host has {g.n}")
        if sorted(vs) != list(range(g.n)):
            raise StructuralError("cycle is not a permutation of the host vertices")
        for a, b in self.steps():
            if not g.has_edge(a, b):
                raise StructuralError(f"cycle step {a}-{b} is not an edge")
        return self

    def canonical(self) -> "OrientedHamCycle":
        """Rotation/reflection representative: starts at 0, second < last."""
        vs = self.verts
        i = vs.index(0)
        rot = vs[i:] + vs[:i]
        if len(rot) > 2 and rot[1] > rot[-1]:
            rot = (rot[0],) + tuple(reversed(rot[1:]))
        return OrientedHamCycle(rot)

    def __len__(self) -> int:
        return len(self.verts)


def forward_count(cycle: OrientedHamCycle, o: Orientation) -> int:
    """Number of steps (v_i, v_{i+1}) that are arcs of ``o``."""
    cycle.validate(o.host)
    return sum(1 for a, b in cycle.steps() if o.has_arc(a, b))


def backward_count(cycle: OrientedHamCycle, o: Orientation) -> int:
    return cycle.n - forward_count(cycle, o)


def best_direction(cycle: OrientedHamCycle, o: Orientation) -> OrientedHamCycle:
    """The traversal sense with more forward edges; ties keep the input."""
    f = forward_count(cycle, o)
    return cycle if 2 * f >= cycle.n else cycle.reversed()


def path_balance(p: VertexPath | Sequence[int], o: Orientation) -> int:
    """Forward minus backward edges along ``p``, first to last."""
    if not isinstance(p, VertexPath):
        p = VertexPath(p)
    p.validate(o.host)
    vs = p.verts
    return sum(1 if o.has_arc(a, b) else -1 for a, b in zip(vs, vs[1:]))


def path_backward(p: VertexPath | Sequence[int], o: Orientation) -> int:
    vs = p.verts if isinstance(p, VertexPath) else tuple(p)
    return sum(1 for a, b in zip(vs, vs[1:]) if not o.has_arc(a, b))


# -- text edge-list format ----------------------------------------------


def _data_lines(text: str) -> list[list[str]]:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def parse_graph(text: str) -> Graph:
    rows = _data_lines(text)
    if not rows or len(rows[0]) != 2:
        raise StructuralError("header must be 'n m'")
    n, m = (int(x) for x in rows[0])
    body = rows[1:]
    if len(body) != m:
        raise StructuralError(f"header promises {m} edges, found {len(body)}")
    edges = []
    for r in body:
        if len(r) != 2:
            raise StructuralError(f"bad edge line {' '.join(r)!r}")
        edges.append((int(r[0]), int(r[1])))
    return Graph(n, edges)


def parse_oriented(text: str) -> Orientation:
    rows = _data_lines(text)
    if not rows or len(rows[0]) != 2:
        raise StructuralError("header must be 'n m'")
    n, m = (int(x) for x in rows[0])
    body = rows[1:]
    if len(body) != m:
        raise StructuralError(f"header promises {m} edges, found {len(body)}")
    edges, arcs = [], []
    for r in body:
        if len(r) != 3 or r[2] not in ("0", "1"):
            raise StructuralError(f"bad oriented edge line {' '.join(r)!r}")
        u, v = int(r[0]), int(r[1])
        edges.append((u, v))
        arcs.append((u, v) if r[2] == "1" else (v, u))
    host = Graph(n, edges)
    return Orientation.from_arcs(host, arcs)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def format_oriented(o: Orientation) -> str:
    g = o.host
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v} {int(o.has_arc(u, v))}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph_file(path) -> Graph | Orientation:
    """Read either format; three columns means an orientation."""
    with open(path) as fh:
        text = fh.read()
    rows = _data_lines(text)
    if len(rows) > 1 and len(rows[1]) == 3:
        return parse_oriented(text)
    return parse_graph(text)
