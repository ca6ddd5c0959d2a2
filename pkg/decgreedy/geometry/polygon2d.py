from __future__ import annotations

import heapq
import logging
import math
from typing import Dict, FrozenSet, List, Sequence, Type

import numpy as np

from ..core import (
    GreedyTrace, InvalidInputError, InvalidStateError, NoPolygon, PolygonResult, Quality, dedup_points
)
from ..greedy import BottleneckInstance
from ..utils import measure_exec_time_ms
from .hull2 import (
    HULL_ENGINES, Hull2, HullEngine2, interior_angle, monotone_chain, presorted_order
)

__all__ = [
    'point_quality_2d', 'maxmin_angle_polygon', 'boundary_points_2d', 'polygon_min_angle', 'AngleInstance'
]


def boundary_points_2d(
    points: np.ndarray, hull: Sequence[int], candidates: Sequence[int], tolerance: float = 1e-9
) -> List[int]:
    """Candidates lying on a hull edge without being hull vertices."""
    if len(hull) < 3 or not len(candidates):
        return []

    vertices = set(hull)
    cand = np.asarray([c for c in candidates if c not in vertices], dtype=np.int64)
    if not len(cand):
        return []

    a = points[np.asarray(hull)]
    d = np.roll(a, -1, axis=0) - a
    rel = points[cand][None, :, :] - a[:, None, :]

    cross = d[:, None, 0] * rel[:, :, 1] - d[:, None, 1] * rel[:, :, 0]
    along = (d[:, None, :] * rel).sum(axis=2)
    length2 = (d * d).sum(axis=1)[:, None]

    on_edge = (np.abs(cross) <= tolerance * length2) & (along > 0) & (along < length2)
    return cand[on_edge.any(axis=0)].tolist()


def point_quality_2d(x: int, state: Hull2, tolerance: float = 1e-9) -> Quality:
    """
    Angular size of the hull's tangent cone at ``x``.

    Hull vertices get their interior angle, boundary points pi, interior points 2 pi. A hull
    with fewer than three vertices bounds no polygon, so every point gets -inf.
    """
    if not state.alive[x]:
        raise InvalidStateError(f'point_quality_2d: point {x} is not alive')

    if len(state.hull) < 3:
        return Quality.neg_inf()

    if x in state.hull:
        return Quality(interior_angle(state, state.position(x)))

    if boundary_points_2d(state.points, state.hull, [x], tolerance):
        return Quality(math.pi)

    return Quality(2 * math.pi)


def _make_engine(points: np.ndarray, engine: str | Type[HullEngine2]) -> HullEngine2:
    if isinstance(engine, str):
        try:
            engine = HULL_ENGINES[engine]
        except KeyError:
            raise InvalidInputError(f'unknown hull engine {engine!r}, expected one of {list(HULL_ENGINES)}') from None
    return engine(points)


@measure_exec_time_ms
def maxmin_angle_polygon(
    points: Sequence[Sequence[float]] | np.ndarray, engine: str | Type[HullEngine2] = 'pocket',
    tie_tolerance: float = 1e-12, hull_tolerance: float = 1e-9
) -> PolygonResult:
    """
    Convex polygon on the input points whose sharpest angle is as wide as possible.

    Repeatedly deletes the sharpest hull vertex while the hull still has three vertices,
    remembering the best sharpest angle seen and how many deletions preceded it.
    """
    pts, mapping = dedup_points(points, 2)

    if len(pts) < 3:
        raise NoPolygon(f'need at least 3 distinct points, got {len(pts)}')

    hull = _make_engine(pts, engine)

    if hull.size < 3:
        raise NoPolygon('all points are collinear')

    current: Dict[int, float] = {}
    heap: List[tuple[float, int]] = []

    def refresh(vertices: Sequence[int]) -> None:
        for w in vertices:
            if hull.on_hull[w]:
                current[w] = a = hull.angle(w)
                heapq.heappush(heap, (a, w))

    refresh(hull.vertices())

    trace = GreedyTrace()
    theta = -math.inf

    while hull.size >= 3:
        while True:
            a, v = heap[0]
            if hull.on_hull[v] and current.get(v) == a:
                break
            heapq.heappop(heap)

        if a > theta + tie_tolerance:
            theta = a
            trace.best_value, trace.best_prefix = Quality(a), len(trace.removals)

        heapq.heappop(heap)
        trace.removals.append((v, Quality(a)))
        refresh(hull.delete(v))

    subset = trace.survivors(len(pts))
    kept = np.asarray(sorted(subset), dtype=np.int64)
    best_ring = kept[monotone_chain(pts[kept], presorted_order(pts[kept]).tolist())].tolist()
    straight = boundary_points_2d(pts, best_ring, sorted(subset), hull_tolerance)

    logging.debug(
        f'maxmin_angle_polygon: theta={theta:.12g}, {len(best_ring)}-gon, {len(subset)} of {len(pts)} points kept'
    )

    return PolygonResult(theta, best_ring, subset, pts, mapping, straight, trace)


class AngleInstance(BottleneckInstance):
    """Tangent-cone angle of every alive point as a generic bottleneck instance."""

    def __init__(self, points: Sequence[Sequence[float]] | np.ndarray, tolerance: float = 1e-9) -> None:
        self.points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
        self.size = len(self.points)
        self.tolerance = tolerance
        self.mask = np.ones(self.size, dtype=bool)
        self._order = presorted_order(self.points)
        self._cache: Dict[int, Quality] | None = None

    @property
    def alive(self) -> FrozenSet[int]:
        return frozenset(np.flatnonzero(self.mask).tolist())

    def state(self) -> Hull2:
        ring = monotone_chain(self.points, self._order[self.mask[self._order]].tolist())
        return Hull2(self.points, self.mask.copy(), ring)

    def qualities(self) -> Dict[int, Quality]:
        if self._cache is None:
            state = self.state()
            alive = np.flatnonzero(self.mask).tolist()

            if len(state.hull) < 3:
                self._cache = {x: Quality.neg_inf() for x in alive}
            else:
                self._cache = {x: Quality(2 * math.pi) for x in alive}
                for x in boundary_points_2d(self.points, state.hull, alive, self.tolerance):
                    self._cache[x] = Quality(math.pi)
                for i, x in enumerate(state.hull):
                    self._cache[x] = Quality(interior_angle(state, i))

        return dict(self._cache)

    def quality(self, x: int) -> Quality:
        if not self.mask[x]:
            self._check_alive(x)
        return self.qualities()[x]

    def remove(self, x: int) -> None:
        if not self.mask[x]:
            self._check_alive(x)
        self.mask[x] = False
        self._cache = None

    def clone(self) -> AngleInstance:
        return AngleInstance(self.points, self.tolerance)


def polygon_min_angle(points: np.ndarray, polygon: Sequence[int]) -> float:
    """Sharpest interior angle of a convex polygon given as ccw indices."""
    return min(interior_angle(Hull2(points, np.ones(len(points), dtype=bool), list(polygon)), i)
               for i in range(len(polygon)))
