"""Good diamonds: classification, heavy edges, extraction and packing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotFoundError, PreconditionError, StructuralError
from .graph import Graph, Orientation, VertexPath, decode_bits, path_balance


class NoTriangleError(NotFoundError):
    def __init__(self, message: str = "graph is triangle-free"):
        super().__init__(message, stage="diamonds", reason="precondition")


@dataclass(frozen=True)
class Diamond:
    """Centre a, b and ends c, d.  The edge {c, d} plays no role."""

    a: int
    b: int
    c: int
    d: int

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def edges(self):
        a, b, c, d = self.vertices
        return [(a, b), (a, c), (a, d), (b, c), (b, d)]

    def validate(self, g: Graph) -> "Diamond":
        if len(set(self.vertices)) != 4:
            raise StructuralError(f"diamond vertices not distinct: {self.vertices}")
        for u, v in self.edges():
            if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
                raise StructuralError(f"diamond edge {u}-{v} missing")
        return self


@dataclass(frozen=True)
class DiamondPaths:
    p: VertexPath  # c -> d
    q: VertexPath  # d -> c


def relation_class(o: Orientation, x: int, a: int, b: int) -> int:
    """Bit 0: x -> a.  Bit 1: x -> b."""
    return int(o.has_arc(x, a)) | (int(o.has_arc(x, b)) << 1)


def classify_diamond(o: Orientation, dia: Diamond) -> bool:
    """True iff the ends relate identically to both centre vertices."""
    dia.validate(o.host)
    a, b, c, d = dia.vertices
    return relation_class(o, c, a, b) == relation_class(o, d, a, b)


def triangle_counts(g: Graph) -> dict:
    """Common-neighbour count of every edge (brute force, for checking)."""
    return {(u, v): (g.nbr_bits(u) & g.nbr_bits(v)).bit_count() for u, v in g.edges()}


def heavy_triangle_edge(g: Graph) -> tuple[tuple[int, int], list[int]]:
    """Edge with the most common neighbours (lexicographically first on ties)."""
    n = g.n
    if g.m == 0:
        raise NoTriangleError()
    if n <= 3000 and g.m > 4 * n:
        adj = g.dense().astype(np.float32)
        common = adj @ adj
        common[adj == 0] = -1
        common[np.tril_indices(n)] = -1
        idx = int(np.argmax(common))
        best = (idx // n, idx % n)
        top = int(round(common[best]))
    else:
        best, top = None, -1
        for u, v in g.edges():
            c = (g.nbr_bits(u) & g.nbr_bits(v)).bit_count()
            if c > top:
                best, top = (u, v), c
    if top <= 0:
        raise NoTriangleError()
    u, v = best
    return best, decode_bits(g.nbr_bits(u) & g.nbr_bits(v))


def _pigeonhole(o: Orientation, a: int, b: int, common) -> Diamond | None:
    seen = {}
    for x in common:
        cls = relation_class(o, x, a, b)
        if cls in seen:
            return Diamond(a, b, seen[cls], x)
        seen[cls] = x
    return None


def find_good_diamond(o: Orientation) -> Diamond:
    """Heavy edge plus pigeonhole over relation classes; full scan as fallback."""
    try:
        (a, b), common = heavy_triangle_edge(o.host)
    except NoTriangleError:
        raise NotFoundError("no triangle, hence no diamond", stage="diamonds", reason="precondition")
    dia = _pigeonhole(o, a, b, common)
    if dia is not None:
        return dia
    from .oracle import enumerate_good_diamonds

    for dia in enumerate_good_diamonds(o):
        return dia
    raise NotFoundError("orientation has no good diamond", stage="diamonds", reason="precondition")


def packing_threshold(n: int, k: int) -> float:
    """Edge count that guarantees k disjoint good diamonds (for n >= 30 + 4(k-1))."""
    return n * n / 4 + 2 * (k - 1) * n - 4 * k * k + 6 * k - 1


def find_disjoint_good_diamonds(o: Orientation, k: int) -> list[Diamond]:
    """Extract a good diamond, delete its vertices, repeat k times."""
    if k < 0:
        raise PreconditionError("k must be non-negative")
    found: list[Diamond] = []
    alive = list(range(o.n))
    cur = o
    ids = alive
    while len(found) < k:
        try:
            dia = find_good_diamond(cur)
        except NotFoundError as exc:
            raise NotFoundError(
                f"stalled after {len(found)} of {k} diamonds: {exc}",
                stage="diamonds", reason="precondition", progress=len(found), diamonds=found,
            )
        dia = Diamond(*(ids[v] for v in dia.vertices))
        found.append(dia)
        used = set(dia.vertices)
        alive = [v for v in alive if v not in used]
        cur, ids = o.induced(alive)
    return found


def positive_paths(o: Orientation, dia: Diamond) -> DiamondPaths:
    if not classify_diamond(o, dia):
        raise PreconditionError(f"diamond {dia.vertices} is not good")
    a, b, c, d = dia.vertices

    def pick(cands):
        for vs in cands:
            if path_balance(vs, o) > 0:
                return VertexPath(vs)
        raise AssertionError("good diamond without a positive path")

    p = pick([(c, a, b, d), (c, b, a, d)])
    q = pick([(d, a, b, c), (d, b, a, c)])
    return DiamondPaths(p, q)
