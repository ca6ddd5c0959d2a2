from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..core import InvalidInputError, InvalidStateError

__all__ = [
    'SimpleGraph'
]


class SimpleGraph:
    """
    Undirected simple graph in CSR form with vertex removal.

    ``degree[v]`` is always the number of alive neighbours of an alive vertex.
    """

    __slots__ = ('n', 'm', 'indptr', 'indices', 'alive', 'degree')

    def __init__(self, n: int, edges: Iterable[Sequence[int]] | np.ndarray = ()) -> None:
        if n < 0:
            raise InvalidInputError('SimpleGraph: negative vertex count')

        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)

        if len(arr) and (arr.min() < 0 or arr.max() >= n):
            raise InvalidInputError(f'SimpleGraph: edge endpoint outside 0..{n - 1}')

        if (arr[:, 0] == arr[:, 1]).any():
            raise InvalidInputError('SimpleGraph: self-loops are not allowed')

        canonical = np.sort(arr, axis=1)
        if len(np.unique(canonical, axis=0)) != len(arr):
            raise InvalidInputError('SimpleGraph: parallel edges are not allowed')

        src = np.concatenate([arr[:, 0], arr[:, 1]])
        dst = np.concatenate([arr[:, 1], arr[:, 0]])
        order = np.argsort(src, kind='stable')

        counts = np.bincount(src, minlength=n)

        self.n = n
        self.m = len(arr)
        self.indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        self.indices = dst[order]
        self.alive = np.ones(n, dtype=bool)
        self.degree = counts.astype(np.int64)

    @classmethod
    def complete(cls, n: int) -> SimpleGraph:
        return cls(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

    @classmethod
    def path(cls, n: int) -> SimpleGraph:
        return cls(n, [(u, u + 1) for u in range(n - 1)])

    @classmethod
    def erdos_renyi(cls, n: int, m: int, rng: np.random.Generator) -> SimpleGraph:
        """A uniformly random simple graph with about ``m`` edges (duplicates dropped)."""
        if n < 2:
            return cls(n)
        u = rng.integers(0, n, size=m)
        v = rng.integers(0, n - 1, size=m)
        v = np.where(v >= u, v + 1, v)
        pairs = np.unique(np.sort(np.stack([u, v], axis=1), axis=1), axis=0)
        return cls(n, pairs)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edges(self) -> List[Tuple[int, int]]:
        return [
            (u, int(w)) for u in range(self.n) for w in self.neighbors(u) if u < w
        ]

    def alive_vertices(self) -> List[int]:
        return np.flatnonzero(self.alive).tolist()

    def remove_vertex(self, v: int) -> None:
        if not self.alive[v]:
            raise InvalidStateError(f'SimpleGraph: vertex {v} already removed')

        self.alive[v] = False
        nbrs = self.neighbors(v)
        np.subtract.at(self.degree, nbrs[self.alive[nbrs]], 1)

    def copy(self) -> SimpleGraph:
        twin = SimpleGraph.__new__(SimpleGraph)
        twin.n, twin.m, twin.indptr, twin.indices = self.n, self.m, self.indptr, self.indices
        twin.alive, twin.degree = self.alive.copy(), self.degree.copy()
        return twin

    def restored(self) -> SimpleGraph:
        """A copy with every vertex alive again."""
        twin = self.copy()
        twin.alive[:] = True
        twin.degree = np.diff(self.indptr)
        return twin

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(n={self.n}, m={self.m}, alive={int(self.alive.sum())})'
