"""Hamilton cycles with at least (n+k)/2 edges in one direction (Dirac-type graphs)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .diamonds import Diamond, DiamondPaths, find_disjoint_good_diamonds, positive_paths
from .errors import BoundViolationError, NotFoundError, ParameterError, StructuralError
from .graph import Orientation, OrientedHamCycle, canon, forward_count, min_degree
from .posa import LinearForest, hamilton_cycle_through_forest


@dataclass
class DiracResult:
    cycle: OrientedHamCycle
    forward: int
    k_requested: int
    diamonds_used: list = field(default_factory=list)
    flipped: set = field(default_factory=set)
    paths: list = field(default_factory=list, repr=False)

    @property
    def bound(self) -> int:
        return math.ceil((self.cycle.n + self.k_requested) / 2)


def majority_direction(h: OrientedHamCycle, o: Orientation, excluded=()) -> OrientedHamCycle:
    """h or its reverse, whichever agrees with more arcs outside ``excluded``; ties keep h."""
    skip = {canon(u, v) for u, v in excluded}
    fwd = total = 0
    for a, b in h.steps():
        if canon(a, b) in skip:
            continue
        total += 1
        fwd += o.has_arc(a, b)
    return h if 2 * fwd >= total else h.reversed()


def flip_mismatched(h: OrientedHamCycle, o: Orientation, diamonds: list, paths: list) -> tuple[OrientedHamCycle, set]:
    """Swap in Q_i wherever the cycle runs along P_i from d_i to c_i."""
    vs = list(h.verts)
    n = len(vs)
    where = {v: i for i, v in enumerate(vs)}
    flipped = set()
    for idx, (dia, dp) in enumerate(zip(diamonds, paths)):
        p = dp.p.verts
        i = where[p[0]]
        seg_fwd = tuple(vs[(i + j) % n] for j in range(4))
        seg_bwd = tuple(vs[(i - j) % n] for j in range(4))
        if seg_fwd == p:
            continue
        if seg_bwd != p:
            raise StructuralError(f"path {p} of diamond {idx} is not a subpath of the cycle")
        # traversal meets d first: positions i-3 .. i hold d, x, y, c
        q = dp.q.verts
        for j in range(4):
            vs[(i - 3 + j) % n] = q[j]
        flipped.add(idx)
    return OrientedHamCycle(vs), flipped


def unbalanced_hamilton_cycle(o: Orientation, k: int, budget: int | None = None) -> DiracResult:
    g = o.host
    n = g.n
    if k < 0:
        raise ParameterError("k must be non-negative")
    if n < 3:
        raise ParameterError("need n >= 3")
    delta = min_degree(g)
    if 2 * delta < n + 8 * k:
        raise ParameterError(f"min degree {delta} is below (n+8k)/2 = {(n + 8 * k) / 2}")
    diamonds: list[Diamond] = []
    paths: list[DiamondPaths] = []
    forest = LinearForest()
    if k > 0:
        try:
            diamonds = find_disjoint_good_diamonds(o, k)
        except NotFoundError as exc:
            raise exc.tagged("diamonds")
        paths = [positive_paths(o, d) for d in diamonds]
        forest = LinearForest(e for dp in paths for e in dp.p.edges())
    try:
        h = hamilton_cycle_through_forest(g, forest, t=3 * k, budget=budget)
    except NotFoundError as exc:
        raise exc.tagged("posa")
    h = majority_direction(h, o, forest.edges)
    h, flipped = flip_mismatched(h, o, diamonds, paths)
    h.validate(g)
    ce = h.edges()
    for i, dp in enumerate(paths):
        seg = dp.q if i in flipped else dp.p
        if not set(seg.edges()) <= ce:
            raise StructuralError(f"diamond path {i} lost in the splice")
    fwd = forward_count(h, o)
    res = DiracResult(h, fwd, k, diamonds, flipped, paths)
    if fwd < res.bound:
        raise BoundViolationError(f"forward {fwd} below {res.bound}", result=res)
    return res
