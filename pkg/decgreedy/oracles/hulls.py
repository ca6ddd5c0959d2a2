from __future__ import annotations

from typing import List, Sequence

import numpy as np

__all__ = [
    'gift_wrap_hull'
]


def gift_wrap_hull(points: Sequence[Sequence[float]] | np.ndarray, subset: Sequence[int] | None = None) -> List[int]:
    """
    Strict convex hull by Jarvis march, counterclockwise from the lowest (x, y) point.

    Collinear boundary points are skipped in favour of the farthest one.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    idx = list(range(len(pts))) if subset is None else sorted(subset)
    if len(idx) < 3:
        return idx

    start = min(idx, key=lambda i: (pts[i][0], pts[i][1], i))
    hull = [start]

    while True:
        cur = hull[-1]
        cand = next(i for i in idx if i != cur)
        for i in idx:
            if i == cur:
                continue
            a, b = pts[cand] - pts[cur], pts[i] - pts[cur]
            cross = a[0] * b[1] - a[1] * b[0]
            if cross < 0 or (cross == 0 and b @ b > a @ a):
                cand = i
        if cand == start:
            break
        hull.append(cand)
        if len(hull) > len(idx):
            break

    return hull if len(hull) >= 3 else hull[:2]
