from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from ..core import DegenerateHull, InvalidStateError

__all__ = [
    'Hull3', 'convex_hull_3d', 'van_oosterom_strackee', 'vertex_solid_angle', 'vertex_solid_angles',
    'descartes_defect_sum'
]


@dataclass
class Hull3:
    """
    Triangulated convex hull in input indices.

    ``facets`` are ccw seen from outside; ``equations`` hold the unit outward normal and offset
    of each facet's plane; ``neighbors[i, j]`` is the facet across the edge opposite corner j.
    """

    points: np.ndarray
    alive: np.ndarray
    vertices: List[int]
    facets: np.ndarray
    equations: np.ndarray
    neighbors: np.ndarray
    volume: float
    incident: Dict[int, List[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.incident:
            for i, tri in enumerate(self.facets.tolist()):
                for v in tri:
                    self.incident.setdefault(v, []).append(i)

    @property
    def scale(self) -> float:
        alive = self.points[self.alive]
        return float(np.ptp(alive, axis=0).max()) if len(alive) else 0.0


def convex_hull_3d(
    points: Sequence[Sequence[float]] | np.ndarray, alive: np.ndarray | None = None, tolerance: float = 1e-9
) -> Hull3:
    """
    Qhull hull of the alive points with outward-oriented triangles.

    Points on the boundary that are not corners (inside a facet or on an edge) are reported by
    Qhull as coplanar and never become vertices.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    mask = np.ones(len(pts), dtype=bool) if alive is None else alive.copy()
    idx = np.flatnonzero(mask)

    if len(idx) < 4:
        raise DegenerateHull(f'need at least 4 points for a polyhedron, got {len(idx)}')

    sub = pts[idx]

    try:
        qhull = ConvexHull(sub)
    except QhullError as e:
        raise DegenerateHull(f'points are coplanar ({str(e).splitlines()[0] if str(e) else "qhull error"})') from None

    scale = float(np.ptp(sub, axis=0).max())
    if qhull.volume <= tolerance * scale ** 3:
        raise DegenerateHull(f'hull volume {qhull.volume:.3g} is negligible')

    simplices = qhull.simplices.copy()
    normals = qhull.equations[:, :3]

    a, b, c = (sub[simplices[:, k]] for k in range(3))
    flip = np.einsum('ij,ij->i', np.cross(b - a, c - a), normals) < 0
    simplices[flip] = simplices[flip][:, [0, 2, 1]]
    neighbors = qhull.neighbors.copy()
    neighbors[flip] = neighbors[flip][:, [0, 2, 1]]

    return Hull3(
        pts, mask, sorted(idx[qhull.vertices].tolist()), idx[simplices], qhull.equations.copy(), neighbors,
        float(qhull.volume)
    )


def van_oosterom_strackee(r1: np.ndarray, r2: np.ndarray, r3: np.ndarray) -> np.ndarray:
    """
    Signed solid angle of the triangle(s) r1 r2 r3 seen from the origin.

    Works row-wise on (k, 3) arrays; positive when the triple product is positive.
    """
    n1 = np.linalg.norm(r1, axis=-1)
    n2 = np.linalg.norm(r2, axis=-1)
    n3 = np.linalg.norm(r3, axis=-1)

    triple = np.einsum('...i,...i->...', r1, np.cross(r2, r3))
    denom = (
        n1 * n2 * n3
        + np.einsum('...i,...i->...', r1, r2) * n3
        + np.einsum('...i,...i->...', r1, r3) * n2
        + np.einsum('...i,...i->...', r2, r3) * n1
    )
    return 2 * np.arctan2(triple, denom)


def _link_cycle(hull: Hull3, v: int) -> List[int]:
    successor: Dict[int, int] = {}

    for i in hull.incident.get(v, []):
        tri = hull.facets[i].tolist()
        k = tri.index(v)
        a, b = tri[(k + 1) % 3], tri[(k + 2) % 3]
        if a in successor:
            raise InvalidStateError(f'vertex {v}: link edge from {a} appears twice')
        successor[a] = b

    if len(successor) < 3:
        raise InvalidStateError(f'vertex {v} has {len(successor)} incident facets, need at least 3')

    start = min(successor)
    cycle = [start]
    while (nxt := successor.get(cycle[-1])) != start:
        if nxt is None or len(cycle) > len(successor):
            raise InvalidStateError(f'vertex {v}: incident facets do not close around it')
        cycle.append(nxt)

    if len(cycle) != len(successor):
        raise InvalidStateError(f'vertex {v}: incident facets form more than one fan')

    return cycle


def vertex_solid_angle(hull: Hull3, v: int) -> float:
    """
    Interior solid angle at hull vertex ``v``.

    The incident facets are walked around ``v`` and the cone they bound is fanned into
    triangles from the first link vertex, each measured with the Van Oosterom-Strackee formula.
    """
    link = _link_cycle(hull, v)
    apex = hull.points[v]
    rays = hull.points[link] - apex

    first = np.repeat(rays[:1], len(link) - 2, axis=0)
    total = float(van_oosterom_strackee(first, rays[1:-1], rays[2:]).sum())

    return abs(total)


def vertex_solid_angles(hull: Hull3) -> Dict[int, float]:
    """
    Solid angles of every hull vertex at once.

    Uses the spherical excess of the link polygon: 2 pi minus the sum of exterior dihedral
    angles (the angle between outward normals) over the edges at the vertex.
    """
    normals = hull.equations[:, :3]
    facets = hull.facets
    total = np.zeros(len(hull.points), dtype=np.float64)
    k = len(facets)

    for j in range(3):
        nb = hull.neighbors[:, j]
        own = np.arange(k) < nb
        n1, n2 = normals[own], normals[nb[own]]
        psi = np.arctan2(np.linalg.norm(np.cross(n1, n2), axis=1), np.einsum('ij,ij->i', n1, n2))
        ends = facets[own][:, [(j + 1) % 3, (j + 2) % 3]]
        np.add.at(total, ends[:, 0], psi)
        np.add.at(total, ends[:, 1], psi)

    return {v: 2 * math.pi - float(total[v]) for v in hull.vertices}


def descartes_defect_sum(hull: Hull3) -> float:
    """Sum over vertices of 2 pi minus the face angles there; 4 pi for any closed convex hull."""
    pts = hull.points
    tri = pts[hull.facets]
    angle_sum = 0.0

    for k in range(3):
        at = tri[:, k]
        u = tri[:, (k + 1) % 3] - at
        w = tri[:, (k + 2) % 3] - at
        angle_sum += float(np.arctan2(np.linalg.norm(np.cross(u, w), axis=1), np.einsum('ij,ij->i', u, w)).sum())

    return 2 * math.pi * len(hull.vertices) - angle_sum
