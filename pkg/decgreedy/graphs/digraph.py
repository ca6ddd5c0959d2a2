from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..core import Direction, InvalidInputError

__all__ = [
    'WeightedDigraph', 'WeightedMultigraph', 'check_endpoints'
]


def check_endpoints(n: int, *columns: np.ndarray) -> None:
    for col in columns:
        if len(col) and (col.min() < 0 or col.max() >= n):
            raise InvalidInputError(f'edge endpoint outside 0..{n - 1}')


class _EdgeList:
    __slots__ = ('n', 'tails', 'heads', 'weights')

    def __init__(
        self, n: int, tails: Iterable[int] | np.ndarray = (), heads: Iterable[int] | np.ndarray = (),
        weights: Iterable[float] | np.ndarray = ()
    ) -> None:
        if n < 0:
            raise InvalidInputError('negative vertex count')

        self.n = n
        self.tails = np.asarray(list(tails) if not isinstance(tails, np.ndarray) else tails, dtype=np.int64)
        self.heads = np.asarray(list(heads) if not isinstance(heads, np.ndarray) else heads, dtype=np.int64)
        self.weights = np.asarray(list(weights) if not isinstance(weights, np.ndarray) else weights, dtype=np.float64)

        if not (len(self.tails) == len(self.heads) == len(self.weights)):
            raise InvalidInputError('edge columns differ in length')

        if np.isnan(self.weights).any():
            raise InvalidInputError('edge weights must not be NaN')

        check_endpoints(n, self.tails, self.heads)

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[Tuple[int, int, float]]) -> _EdgeList:
        if not edges:
            return cls(n)
        t, h, w = zip(*edges)
        return cls(n, t, h, w)

    @property
    def m(self) -> int:
        return len(self.weights)

    def edges(self) -> List[Tuple[int, int, float]]:
        return list(zip(self.tails.tolist(), self.heads.tolist(), self.weights.tolist()))

    def oriented(self, direction: Direction) -> np.ndarray:
        """Weights in the max-min frame the solvers work in."""
        return self.weights if direction is Direction.MAXMIN else -self.weights

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(n={self.n}, m={self.m})'


class WeightedDigraph(_EdgeList):
    """Directed multigraph; edge i runs from ``tails[i]`` to ``heads[i]``. Self-loops allowed."""

    def out_lists(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.n)]
        for e, t in enumerate(self.tails.tolist()):
            out[t].append(e)
        return out

    def in_lists(self) -> List[List[int]]:
        inc: List[List[int]] = [[] for _ in range(self.n)]
        for e, h in enumerate(self.heads.tolist()):
            inc[h].append(e)
        return inc


class WeightedMultigraph(_EdgeList):
    """Undirected multigraph; edge i joins ``tails[i]`` and ``heads[i]``. Self-loops allowed."""

    def incidence(self) -> List[List[Tuple[int, int]]]:
        """Per vertex, the (edge, other endpoint) pairs; a self-loop is listed once."""
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(zip(self.tails.tolist(), self.heads.tolist())):
            adj[u].append((e, v))
            if u != v:
                adj[v].append((e, u))
        return adj
