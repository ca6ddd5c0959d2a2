from __future__ import annotations

import logging
import math
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from ..core import (
    DegenerateHull, GreedyTrace, InvalidStateError, NoPolyhedron, PolyhedronResult, Quality, dedup_points
)
from ..greedy import BottleneckInstance
from ..utils import measure_exec_time_ms
from .hull3 import Hull3, convex_hull_3d, vertex_solid_angle, vertex_solid_angles

__all__ = [
    'point_quality_3d', 'boundary_qualities_3d', 'maxmin_solid_angle_polyhedron', 'SolidAngleInstance'
]


def _distinct_planes(hull: Hull3) -> Tuple[np.ndarray, np.ndarray]:
    """One equation per geometric facet plane (triangles of a flat face share one)."""
    eq = hull.equations
    _, first = np.unique(np.round(eq, 9), axis=0, return_index=True)
    return eq[np.sort(first)][:, :3], eq[np.sort(first)][:, 3]


def boundary_qualities_3d(hull: Hull3, candidates: Sequence[int], tolerance: float = 1e-9) -> Dict[int, Quality]:
    """
    Tangent-cone solid angle of non-vertex points.

    A point inside the hull gets 4 pi, a point inside a facet 2 pi, a point on an edge the lune
    2 phi of the edge's interior dihedral angle phi.
    """
    vertices = set(hull.vertices)
    cand = [c for c in candidates if c not in vertices]
    if not cand:
        return {}

    normals, offsets = _distinct_planes(hull)
    pts = hull.points[cand]
    slack = tolerance * max(hull.scale, 1.0)
    on_plane = np.abs(pts @ normals.T + offsets) <= slack

    out: Dict[int, Quality] = {}
    for row, x in enumerate(cand):
        planes = np.flatnonzero(on_plane[row])
        if len(planes) == 0:
            out[x] = Quality(4 * math.pi)
        elif len(planes) == 1:
            out[x] = Quality(2 * math.pi)
        else:
            n1, n2 = normals[planes[0]], normals[planes[1]]
            psi = math.atan2(float(np.linalg.norm(np.cross(n1, n2))), float(n1 @ n2))
            out[x] = Quality(2 * (math.pi - psi))
    return out


def point_quality_3d(x: int, state: Hull3 | None, tolerance: float = 1e-9) -> Quality:
    """Solid angle at a hull vertex, the boundary or interior sentinel otherwise; -inf without a hull."""
    if state is None:
        return Quality.neg_inf()

    if not state.alive[x]:
        raise InvalidStateError(f'point_quality_3d: point {x} is not alive')

    if x in state.incident:
        return Quality(vertex_solid_angle(state, x))

    return boundary_qualities_3d(state, [x], tolerance)[x]


def _try_hull(points: np.ndarray, alive: np.ndarray, tolerance: float) -> Hull3 | None:
    try:
        return convex_hull_3d(points, alive, tolerance)
    except DegenerateHull:
        return None


@measure_exec_time_ms
def maxmin_solid_angle_polyhedron(
    points: Sequence[Sequence[float]] | np.ndarray, tie_tolerance: float = 1e-12, hull_tolerance: float = 1e-9
) -> PolyhedronResult:
    """
    Convex polyhedron on the input points whose sharpest corner is as wide as possible.

    The hull is recomputed after every deletion of the sharpest vertex, until it loses volume.
    """
    pts, mapping = dedup_points(points, 3)

    if len(pts) < 4:
        raise NoPolyhedron(f'need at least 4 distinct points, got {len(pts)}')

    alive = np.ones(len(pts), dtype=bool)
    hull = _try_hull(pts, alive, hull_tolerance)

    if hull is None:
        raise NoPolyhedron('all points are coplanar')

    trace = GreedyTrace()
    theta = -math.inf
    rounds = 0

    while hull is not None:
        angles = vertex_solid_angles(hull)
        v = min(angles, key=lambda w: (angles[w], w))
        a = angles[v]

        if a > theta + tie_tolerance:
            theta = a
            trace.best_value, trace.best_prefix = Quality(a), len(trace.removals)

        trace.removals.append((v, Quality(a)))
        alive[v] = False
        hull = _try_hull(pts, alive, hull_tolerance)
        rounds += 1

    subset = trace.survivors(len(pts))
    keep = np.zeros(len(pts), dtype=bool)
    keep[sorted(subset)] = True
    best = convex_hull_3d(pts, keep, hull_tolerance)

    logging.debug(
        f'maxmin_solid_angle_polyhedron: theta={theta:.12g} sr, {len(best.vertices)} corners, {rounds} hull rebuilds'
    )

    return PolyhedronResult(
        theta, best.vertices, [tuple(f) for f in best.facets.tolist()], subset, pts, mapping, trace
    )


class SolidAngleInstance(BottleneckInstance):
    def __init__(self, points: Sequence[Sequence[float]] | np.ndarray, tolerance: float = 1e-9) -> None:
        self.points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        self.size = len(self.points)
        self.tolerance = tolerance
        self.mask = np.ones(self.size, dtype=bool)
        self._cache: Dict[int, Quality] | None = None

    @property
    def alive(self) -> FrozenSet[int]:
        return frozenset(np.flatnonzero(self.mask).tolist())

    def state(self) -> Hull3 | None:
        return _try_hull(self.points, self.mask, self.tolerance)

    def qualities(self) -> Dict[int, Quality]:
        if self._cache is None:
            alive: List[int] = np.flatnonzero(self.mask).tolist()
            hull = self.state()

            if hull is None:
                self._cache = {x: Quality.neg_inf() for x in alive}
            else:
                self._cache = boundary_qualities_3d(hull, alive, self.tolerance)
                self._cache.update({v: Quality(a) for v, a in vertex_solid_angles(hull).items()})

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

    def clone(self) -> SolidAngleInstance:
        return SolidAngleInstance(self.points, self.tolerance)
