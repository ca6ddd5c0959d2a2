from __future__ import annotations

import math
from abc import abstractmethod
from dataclasses import dataclass
from typing import Iterable, List, Sequence

import numpy as np

from ..core import ABC, InvalidStateError, abstract_attribute

__all__ = [
    'Hull2', 'HullEngine2', 'ChainRebuildEngine', 'PocketRepairEngine', 'HULL_ENGINES',
    'convex_hull_2d', 'interior_angle', 'vertex_angle', 'monotone_chain', 'presorted_order'
]


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def presorted_order(points: np.ndarray) -> np.ndarray:
    """Indices sorted by (x, y, index)."""
    return np.lexsort((np.arange(len(points)), points[:, 1], points[:, 0]))


def monotone_chain(points: np.ndarray, order: Iterable[int]) -> List[int]:
    """
    Andrew's monotone chain over indices already sorted by (x, y).

    Returns the strict hull counterclockwise from the first index; collinear and repeated
    points are dropped.
    """
    idx = list(order)

    if len(idx) <= 2:
        if len(idx) == 2 and (points[idx[0]] == points[idx[1]]).all():
            return idx[:1]
        return idx

    lower: List[int] = []
    for i in idx:
        while len(lower) >= 2 and _cross(points[lower[-2]], points[lower[-1]], points[i]) <= 0:
            lower.pop()
        lower.append(i)

    upper: List[int] = []
    for i in reversed(idx):
        while len(upper) >= 2 and _cross(points[upper[-2]], points[upper[-1]], points[i]) <= 0:
            upper.pop()
        upper.append(i)

    hull = lower[:-1] + upper[:-1]

    if len(hull) == 2 and (points[hull[0]] == points[hull[1]]).all():
        return hull[:1]

    return hull


def convex_hull_2d(points: Sequence[Sequence[float]] | np.ndarray) -> List[int]:
    """Counterclockwise hull vertex indices, starting at the lowest (x, y) point."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    return monotone_chain(pts, presorted_order(pts))


def vertex_angle(prev: np.ndarray, at: np.ndarray, nxt: np.ndarray) -> float:
    """Angle at ``at`` between the rays towards ``prev`` and ``nxt``, in [0, pi]."""
    u = prev - at
    w = nxt - at
    if not (u.any() and w.any()):
        raise InvalidStateError(f'vertex_angle: repeated coordinates at {tuple(at)}')
    return math.atan2(abs(float(u[0] * w[1] - u[1] * w[0])), float(u @ w))


@dataclass
class Hull2:
    points: np.ndarray
    alive: np.ndarray
    hull: List[int]

    def position(self, v: int) -> int:
        return self.hull.index(v)


def interior_angle(hull: Hull2, i: int) -> float:
    """Interior angle at hull position ``i``, in (0, pi]."""
    k = len(hull.hull)
    if k < 3:
        raise InvalidStateError('interior_angle: hull has fewer than 3 vertices')
    pts = hull.points
    return vertex_angle(pts[hull.hull[i - 1]], pts[hull.hull[i]], pts[hull.hull[(i + 1) % k]])


class HullEngine2(ABC):
    """
    Convex hull of a shrinking planar point set, kept as a ccw ring.

    ``delete`` returns the hull vertices whose interior angle may have changed.
    """

    points: np.ndarray = abstract_attribute()
    alive: np.ndarray = abstract_attribute()

    def __init__(self, points: np.ndarray) -> None:
        self.points = points
        self.alive = np.ones(len(points), dtype=bool)
        self.nxt = [-1] * len(points)
        self.prv = [-1] * len(points)
        self.on_hull = [False] * len(points)
        self.size = 0
        self.anchor = -1

    def _set_ring(self, ring: Sequence[int]) -> None:
        for v in self.vertices():
            self.on_hull[v] = False
        k = len(ring)
        for i, v in enumerate(ring):
            self.on_hull[v] = True
            self.nxt[v] = ring[(i + 1) % k]
            self.prv[v] = ring[i - 1]
        self.size = k
        self.anchor = ring[0] if k else -1

    def vertices(self) -> List[int]:
        if self.size == 0:
            return []
        out = [self.anchor]
        v = self.nxt[self.anchor]
        while v != self.anchor and len(out) < self.size:
            out.append(v)
            v = self.nxt[v]
        return out

    def angle(self, v: int) -> float:
        return vertex_angle(self.points[self.prv[v]], self.points[v], self.points[self.nxt[v]])

    def snapshot(self) -> Hull2:
        ring = self.vertices()
        if ring:
            start = min(range(len(ring)), key=lambda i: (self.points[ring[i]][0], self.points[ring[i]][1], ring[i]))
            ring = ring[start:] + ring[:start]
        return Hull2(self.points, self.alive.copy(), ring)

    def delete(self, v: int) -> List[int]:
        if not self.alive[v]:
            raise InvalidStateError(f'{self.__class__.__name__}: point {v} already deleted')
        self.alive[v] = False
        if not self.on_hull[v]:
            return []
        return self._delete_vertex(v)

    @abstractmethod
    def _delete_vertex(self, v: int) -> List[int]:
        raise NotImplementedError


class ChainRebuildEngine(HullEngine2):
    """Rebuilds the whole hull with one monotone chain pass per deletion."""

    def __init__(self, points: np.ndarray) -> None:
        super().__init__(points)
        self.order = presorted_order(points)
        self._set_ring(monotone_chain(points, self.order.tolist()))

    def _delete_vertex(self, v: int) -> List[int]:
        self.on_hull[v] = False
        if self.anchor == v:
            self.anchor = self.nxt[v]
        self._set_ring(monotone_chain(self.points, self.order[self.alive[self.order]].tolist()))
        return self.vertices()


class PocketRepairEngine(HullEngine2):
    """
    Repairs only the pocket a deleted vertex leaves behind.

    The alive points strictly right of the chord prev -> next are the only ones that can surface;
    their local hull together with the chord ends is spliced in between prev and next.
    """

    def __init__(self, points: np.ndarray) -> None:
        super().__init__(points)
        self._set_ring(monotone_chain(points, presorted_order(points).tolist()))

    def _pocket(self, p: int, q: int) -> np.ndarray:
        pts = self.points
        cand = np.flatnonzero(self.alive)
        d = pts[q] - pts[p]
        rel = pts[cand] - pts[p]
        side = d[0] * rel[:, 1] - d[1] * rel[:, 0]
        return cand[side < 0]

    def _delete_vertex(self, v: int) -> List[int]:
        p, q = self.prv[v], self.nxt[v]
        self.on_hull[v] = False

        pocket = self._pocket(p, q)
        local = np.concatenate([pocket, [p, q]]).astype(np.int64)
        local = local[presorted_order(self.points[local])]
        ring = monotone_chain(self.points, local.tolist())

        start = ring.index(p)
        ring = ring[start:] + ring[:start]
        chain = ring[1:ring.index(q)]

        prev = p
        for w in chain:
            self.on_hull[w] = True
            self.nxt[prev], self.prv[w] = w, prev
            prev = w
        self.nxt[prev], self.prv[q] = q, prev

        self.size += len(chain) - 1
        if self.anchor == v:
            self.anchor = p

        return [p, q, *chain]


HULL_ENGINES = {
    'chain': ChainRebuildEngine,
    'pocket': PocketRepairEngine,
}
