from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, NamedTuple, Tuple

import numpy as np

from .enums import CurveMode, Direction
from .quality import Quality

__all__ = [
    'GreedyTrace', 'GreedyOutcome', 'KnownBetaOutcome',
    'DegeneracyResult', 'PolygonResult', 'PolyhedronResult', 'CycleResult', 'CurveResult'
]


@dataclass
class GreedyTrace:
    removals: List[Tuple[int, Quality]] = field(default_factory=list)
    best_value: Quality = field(default_factory=Quality.neg_inf)
    best_prefix: int = 0

    @property
    def order(self) -> List[int]:
        return [x for x, _ in self.removals]

    def survivors(self, universe: int, prefix: int | None = None) -> FrozenSet[int]:
        """Elements still alive after the first ``prefix`` removals (``best_prefix`` by default)."""
        if prefix is None:
            prefix = self.best_prefix
        removed = {x for x, _ in self.removals[:prefix]}
        return frozenset(x for x in range(universe) if x not in removed)


class GreedyOutcome(NamedTuple):
    theta: Quality
    maximal_subset: FrozenSet[int]
    trace: GreedyTrace


class KnownBetaOutcome(NamedTuple):
    subset: FrozenSet[int]
    emptied: bool


@dataclass
class DegeneracyResult:
    d: int
    core: FrozenSet[int]
    ordering: List[int]
    core_numbers: List[int]
    operations: int = 0


@dataclass
class PolygonResult:
    theta: float
    polygon: List[int]
    bottleneck_subset: FrozenSet[int]
    points: np.ndarray
    mapping: List[int]
    straight: List[int] = field(default_factory=list)
    trace: GreedyTrace = field(default_factory=GreedyTrace)

    def boundary_polygon(self) -> List[int]:
        """The optimal polygon with straight boundary points of the subset spliced in, ccw."""
        if not self.straight:
            return list(self.polygon)

        pts = self.points
        out: List[int] = []
        for i, a in enumerate(self.polygon):
            b = self.polygon[(i + 1) % len(self.polygon)]
            d = pts[b] - pts[a]
            on_edge = [
                s for s in self.straight
                if abs(d[0] * (pts[s][1] - pts[a][1]) - d[1] * (pts[s][0] - pts[a][0])) <= 1e-9 * (1 + d @ d)
                and 0 < (pts[s] - pts[a]) @ d < d @ d
            ]
            on_edge.sort(key=lambda s: (pts[s] - pts[a]) @ d)
            out.append(a)
            out.extend(on_edge)
        return out


@dataclass
class PolyhedronResult:
    theta: float
    vertices: List[int]
    facets: List[Tuple[int, int, int]]
    bottleneck_subset: FrozenSet[int]
    points: np.ndarray
    mapping: List[int]
    trace: GreedyTrace = field(default_factory=GreedyTrace)


@dataclass
class CycleResult:
    """
    A witness cycle in input edge ids.

    ``value`` is the extreme weight in the caller's frame: the minimum edge weight under
    MaxMin, the maximum under MinMax. For polar graphs ``poles`` holds the (entry, exit) pole
    pair of every vertex in ``vertices``.
    """

    value: float
    edges: List[int]
    vertices: List[int]
    direction: Direction = Direction.MAXMIN
    poles: List[Tuple[int, int]] | None = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)


@dataclass
class CurveResult:
    theta: float
    curve: List[int]
    mode: CurveMode
    angles: List[float]
    mapping: List[int] = field(default_factory=list)
