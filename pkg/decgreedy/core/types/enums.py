from __future__ import annotations

from enum import Enum
from typing import List

__all__ = [
    'Direction', 'CurveMode', 'GraphKind', 'OutputFormat', 'SequenceAlgorithm'
]


class Direction(str, Enum):
    MAXMIN = 'maxmin'
    MINMAX = 'minmax'

    def __str__(self) -> str:
        return self.value

    def orient(self, weight: float) -> float:
        """Map a weight into the max-min frame every solver works in."""
        return weight if self is Direction.MAXMIN else -weight

    @property
    def neutral(self) -> float:
        """Weight that can never be the bottleneck under this direction."""
        return float('inf') if self is Direction.MAXMIN else float('-inf')

    @classmethod
    def list(cls) -> List[str]:
        return [e.value for e in cls]


class CurveMode(str, Enum):
    REPEATED_SEGMENTS = 'repeated-segments-allowed'
    REPEATED_POINTS = 'repeated-points-only'

    def __str__(self) -> str:
        return self.value


class GraphKind(str, Enum):
    UNDIRECTED = 'undirected'
    DIRECTED = 'directed'
    MIXED = 'mixed'
    POLAR = 'polar'

    def __str__(self) -> str:
        return self.value

    @classmethod
    def list(cls) -> List[str]:
        return [e.value for e in cls]


class OutputFormat(str, Enum):
    JSON = 'json'
    SVG = 'svg'
    OBJ = 'obj'
    TEXT = 'text'

    def __str__(self) -> str:
        return self.value

    @classmethod
    def list(cls) -> List[str]:
        return [e.value for e in cls]


class SequenceAlgorithm(str, Enum):
    GREEDY = 'greedy'
    KNOWN_BETA = 'known_beta'

    def __str__(self) -> str:
        return self.value
