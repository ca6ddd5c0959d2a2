from __future__ import annotations

from pathlib import Path
from typing import Sequence, Tuple

import numpy as np
from matplotlib.figure import Figure
from matplotlib.patches import Polygon

__all__ = [
    'POINTS_GID', 'POLYGON_GID', 'render_polygon_svg', 'write_obj'
]


POINTS_GID = 'points'
POLYGON_GID = 'bottleneck-polygon'


def render_polygon_svg(
    path: Path, points: np.ndarray, polygon: Sequence[int], title: str | None = None
) -> None:
    """
    All input points with the optimal polygon drawn over them.

    The point cloud and the polygon are tagged with the SVG ids ``points`` and
    ``bottleneck-polygon`` so the document can be checked structurally.
    """
    fig = Figure(figsize=(6, 6))
    ax = fig.add_subplot()
    ax.set_aspect('equal')
    ax.set_axis_off()

    ring = points[np.asarray(polygon, dtype=np.int64)]
    patch = Polygon(ring, closed=True, facecolor='#f4d03f55', edgecolor='#c0392b', linewidth=1.5, zorder=1)
    patch.set_gid(POLYGON_GID)
    ax.add_patch(patch)

    cloud = ax.scatter(points[:, 0], points[:, 1], s=9, c='#2c3e50', zorder=2)
    cloud.set_gid(POINTS_GID)

    if title:
        ax.set_title(title, fontsize=9)

    ax.autoscale_view()
    fig.savefig(path, format='svg', bbox_inches='tight', metadata={'Date': None})


def write_obj(path: Path, points: np.ndarray, facets: Sequence[Tuple[int, int, int]]) -> None:
    """Wavefront OBJ of a triangulated hull; unused points are left out and indices renumbered."""
    used = sorted({v for tri in facets for v in tri})
    index = {v: i + 1 for i, v in enumerate(used)}

    with open(path, 'w', encoding='utf-8') as f:
        f.write(f'# {len(used)} vertices, {len(facets)} faces\n')
        for v in used:
            x, y, z = points[v].tolist()
            f.write(f'v {x!r} {y!r} {z!r}\n')
        for a, b, c in facets:
            f.write(f'f {index[a]} {index[b]} {index[c]}\n')
