from __future__ import annotations

from typing import Callable, List, Sequence, Set

import numpy as np

from ..core import CurveMode, CurveResult, dedup_points
from .budget import OracleBudget

__all__ = [
    'curve_enumeration_oracle', 'turn_angles'
]


def turn_angles(points: np.ndarray) -> np.ndarray:
    """``A[a, b, c]`` is the angle at b between b->a and b->c, for every index triple."""
    d = points[None, :, :] - points[:, None, :]
    u = d.transpose(1, 0, 2)[:, :, None, :]
    w = d[None, :, :, :]
    return np.arctan2(np.linalg.norm(np.cross(u, w), axis=-1), (u * w).sum(axis=-1))


def _closed_curve(
    angles: np.ndarray, threshold: float, segment: Callable[[int, int], object]
) -> List[int] | None:
    """Depth-first search for a closed curve with every turn at least ``threshold``."""
    n = len(angles)
    ok = angles >= threshold

    def walk(path: List[int], used: Set[object]) -> List[int] | None:
        prev, cur = path[-2], path[-1]
        s0, s1 = path[0], path[1]

        closes = len(path) >= 3 and s0 not in (prev, cur) and cur != s1
        if closes and ok[prev, cur, s0] and ok[cur, s0, s1] and segment(cur, s0) not in used:
            return path

        for nxt in range(n):
            if nxt in (prev, cur) or not ok[prev, cur, nxt]:
                continue
            key = segment(cur, nxt)
            if key in used:
                continue
            used.add(key)
            found = walk(path + [nxt], used)
            if found is not None:
                return found
            used.discard(key)

        return None

    for s0 in range(n):
        for s1 in range(n):
            if s0 != s1:
                found = walk([s0, s1], {segment(s0, s1)})
                if found is not None:
                    return found
    return None


def curve_enumeration_oracle(
    points: Sequence[Sequence[float]] | np.ndarray, mode: CurveMode, budget: OracleBudget | None = None
) -> CurveResult | None:
    """
    Max-min-angle closed curve by a sweep over the distinct turn angles, largest first.

    In repeated-points-only mode no undirected segment may repeat; in the other mode no segment
    may repeat in the same direction, which still reaches an optimal curve. ``None`` for fewer
    than three points.
    """
    pts, mapping = dedup_points(points, 3)
    (budget or OracleBudget()).check('curve', len(pts))

    n = len(pts)
    if n < 3:
        return None

    angles = turn_angles(pts)
    if mode is CurveMode.REPEATED_POINTS:
        def segment(a: int, b: int) -> object:
            return (a, b) if a < b else (b, a)
    else:
        def segment(a: int, b: int) -> object:
            return (a, b)

    valid = np.ones((n, n, n), dtype=bool)
    idx = np.arange(n)
    valid[idx, idx, :] = valid[:, idx, idx] = valid[idx, :, idx] = False

    for threshold in np.unique(angles[valid])[::-1].tolist():
        curve = _closed_curve(angles, threshold, segment)
        if curve is not None:
            k = len(curve)
            turns = [float(angles[curve[i - 1], curve[i], curve[(i + 1) % k]]) for i in range(k)]
            return CurveResult(min(turns), curve, mode, turns, mapping)

    return None
