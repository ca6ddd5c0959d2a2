from __future__ import annotations

import logging
import math
from time import perf_counter_ns
from typing import List, Sequence

import numpy as np

from ..core import (
    CurveMode, CurveResult, Direction, InvalidInputError, NoCurve, NoCycle, ReconstructionError, dedup_points
)
from ..graphs import PolarGraph, bottleneck_cycle_directed, bottleneck_regular_cycle, double_cover, project_cover_cycle
from ..utils import print_perf_timepoints

__all__ = [
    'angle_at', 'segment_points', 'segment_id', 'chain_middles', 'build_polar_graph', 'curve_angles',
    'maxmin_angle_closed_curve'
]


def angle_at(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> float:
    """Angle at ``b`` between the rays towards ``a`` and ``c``, in [0, pi]."""
    u = np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
    w = np.asarray(c, dtype=np.float64) - np.asarray(b, dtype=np.float64)
    if not (u.any() and w.any()):
        raise InvalidInputError(f'angle_at: point {tuple(np.asarray(b).tolist())} coincides with a neighbour')
    return math.atan2(float(np.linalg.norm(np.cross(u, w))), float(u @ w))


def segment_id(i: np.ndarray | int, j: np.ndarray | int, n: int) -> np.ndarray | int:
    """Index of segment {i, j}, i < j, in lexicographic order."""
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def segment_points(n: int) -> np.ndarray:
    """Row s holds the two point indices (smaller first) of segment s; column k is pole k."""
    i, j = np.triu_indices(n, 1)
    return np.stack([i, j], axis=1)


def build_polar_graph(points: Sequence[Sequence[float]] | np.ndarray, max_points: int = 400) -> PolarGraph:
    """
    The polar graph whose vertices are segments and whose edges are two-segment chains.

    The chain a-b-c (a < c, b the middle point) joins segments {a, b} and {b, c}, attached on
    both sides at the pole that is point b, weighted by the angle at b. Pole 0 of a segment is
    its smaller point index. Repeated points are dropped with a warning first, and point
    indices refer to the deduplicated input.
    """
    pts, _ = dedup_points(points, 3)
    return _chain_graph(pts, max_points)


def _chain_graph(pts: np.ndarray, max_points: int) -> PolarGraph:
    n = len(pts)

    if n < 3:
        raise InvalidInputError(f'need at least 3 points, got {n}')
    if n > max_points:
        raise InvalidInputError(f'{n} points exceed the limit of {max_points} (about {n ** 3 // 2} chains)')

    pair_a, pair_c = np.triu_indices(n - 1, 1)
    others = np.arange(n - 1)
    mids, firsts, lasts = [], [], []

    for b in range(n):
        rest = others + (others >= b)
        mids.append(np.full(len(pair_a), b, dtype=np.int64))
        firsts.append(rest[pair_a])
        lasts.append(rest[pair_c])

    b, a, c = np.concatenate(mids), np.concatenate(firsts), np.concatenate(lasts)

    u = segment_id(np.minimum(a, b), np.maximum(a, b), n)
    v = segment_id(np.minimum(b, c), np.maximum(b, c), n)
    pu = (b > a).astype(np.int64)
    pv = (b > c).astype(np.int64)

    ra, rc = pts[a] - pts[b], pts[c] - pts[b]
    weights = np.arctan2(np.linalg.norm(np.cross(ra, rc), axis=1), np.einsum('ij,ij->i', ra, rc))

    return PolarGraph(n * (n - 1) // 2, u, pu, v, pv, weights)


def chain_middles(g: PolarGraph, n: int) -> np.ndarray:
    """Middle point of every chain edge, read off the pole it is attached at."""
    return segment_points(n)[g.eu, g.epu]


def curve_angles(points: np.ndarray, curve: Sequence[int]) -> List[float]:
    k = len(curve)
    return [angle_at(points[curve[i - 1]], points[curve[i]], points[curve[(i + 1) % k]]) for i in range(k)]


def maxmin_angle_closed_curve(
    points: Sequence[Sequence[float]] | np.ndarray, allow_repeated_segments: bool = False, max_points: int = 400,
    warn_vertices: int = 10_000
) -> CurveResult:
    """
    Closed polygonal curve through some of the points whose sharpest turn is as wide as possible.

    With repeated segments allowed this is a bottleneck directed cycle of the double cover of
    the chain graph; otherwise a bottleneck regular cycle of the chain graph itself, which
    uses every segment at most once. Points may repeat in both modes.
    """
    t0 = perf_counter_ns()
    pts, mapping = dedup_points(points, 3)

    if len(pts) < 3:
        raise NoCurve(f'need at least 3 distinct points, got {len(pts)}')

    g = _chain_graph(pts, max_points)
    t1 = perf_counter_ns()

    try:
        if allow_repeated_segments:
            cover = double_cover(g)
            found = bottleneck_cycle_directed(cover.digraph, Direction.MAXMIN)
            chains = [step.edge for step in project_cover_cycle(cover, found.edges)]
        else:
            found = bottleneck_regular_cycle(g, Direction.MAXMIN, warn_vertices)
            chains = found.edges
    except NoCycle as e:
        raise NoCurve(str(e)) from None

    t2 = perf_counter_ns()

    curve = chain_middles(g, len(pts))[chains].tolist()
    angles = curve_angles(pts, curve)
    theta = found.value

    if abs(min(angles) - theta) > 1e-9:
        raise ReconstructionError(f'curve turns down to {min(angles)}, solver reported {theta}')

    mode = CurveMode.REPEATED_SEGMENTS if allow_repeated_segments else CurveMode.REPEATED_POINTS
    t3 = perf_counter_ns()
    print_perf_timepoints(t0, t1, t2, t3)
    logging.debug(f'maxmin_angle_closed_curve: {mode}, {g!r}, theta={theta:.12g}, {len(curve)} turns')

    return CurveResult(theta, curve, mode, angles, mapping)
