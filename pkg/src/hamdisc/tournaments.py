"""Tournaments: directed Hamilton paths and nearly-forward Hamilton cycles."""

from __future__ import annotations

from .errors import StructuralError
from .graph import Orientation, OrientedHamCycle, VertexPath
from .oracle import DEFAULT_LIMIT, OracleLimit, count_cycles_min_forward


def _check_tournament(t: Orientation) -> None:
    n = t.n
    if t.host.m != n * (n - 1) // 2:
        raise StructuralError("host graph is not complete")


def directed_hamilton_path(t: Orientation) -> VertexPath:
    """Directed Hamilton path by insertion.

    Each new vertex v goes before the first path vertex it beats; if it
    beats none it goes last.  The predecessor then beats v (it was not
    beaten), so every arc stays forward.
    """
    _check_tournament(t)
    path: list[int] = []
    for v in range(t.n):
        out = t.out_bits(v)
        for i, w in enumerate(path):
            if out >> w & 1:
                path.insert(i, v)
                break
        else:
            path.append(v)
    return VertexPath(path)


def near_forward_cycle_from_path(t: Orientation, path: VertexPath) -> OrientedHamCycle:
    """Close a directed Hamilton path; only the closing edge can be backward."""
    vs = path.verts
    for a, b in zip(vs, vs[1:]):
        if not t.has_arc(a, b):
            raise StructuralError(f"{a}->{b} is not an arc")
    return OrientedHamCycle(vs)


def count_unbalanced_cycles(t: Orientation, min_same_direction: int,
                            limit: OracleLimit = DEFAULT_LIMIT) -> int:
    """Hamilton cycles of K_n with >= min_same_direction edges one way (exhaustive)."""
    _check_tournament(t)
    return count_cycles_min_forward(t, min_same_direction, limit)
