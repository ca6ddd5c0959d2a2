from __future__ import annotations

import math
from typing import Callable, Dict, FrozenSet, Tuple

import numpy as np
import pytest

from decgreedy.degeneracy import SimpleGraph
from decgreedy.greedy import FunctionInstance, TableInstance

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
SQUARE_CENTER = np.vstack([SQUARE, [[0.5, 0.5]]])

CUBE = np.array([[x, y, z] for x in (0.0, 1.0) for y in (0.0, 1.0) for z in (0.0, 1.0)])
CUBE_CENTER = np.vstack([CUBE, [[0.5, 0.5, 0.5]]])

TETRAHEDRON = np.array([[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]])

# solid angle at a regular tetrahedron's corner
TETRA_SOLID_ANGLE = math.acos(23 / 27)


def monotone_table(rng: np.random.Generator, size: int, levels: int = 4) -> TableInstance:
    """
    Random monotone instance as an explicit table.

    q(x, S) = base[x] + sum of bonus[x][y] over the other y in S, with non-negative integer
    bonuses, so removing elements never raises a quality and ties are frequent.
    """
    base = rng.integers(0, levels, size)
    bonus = rng.integers(0, 2, (size, size)) * rng.integers(0, levels, (size, size))
    table: Dict[Tuple[int, FrozenSet[int]], int] = {}

    for mask in range(1, 1 << size):
        alive = frozenset(x for x in range(size) if mask >> x & 1)
        for x in alive:
            table[x, alive] = int(base[x] + sum(bonus[x][y] for y in alive if y != x))

    return TableInstance(size, table)


def monotone_function(rng: np.random.Generator, size: int) -> FunctionInstance:
    """Random monotone instance with real-valued qualities: the k-th largest of random weights to survivors."""
    weights = rng.random((size, size))
    k = int(rng.integers(1, max(size, 2)))

    def q(x: int, alive: FrozenSet[int]) -> float:
        others = sorted((weights[x][y] for y in alive if y != x), reverse=True)
        return others[k - 1] if len(others) >= k else -math.inf

    return FunctionInstance(size, q)


def random_simple_graph(rng: np.random.Generator, n: int, p: float) -> SimpleGraph:
    mask = np.triu(rng.random((n, n)) < p, 1)
    return SimpleGraph(n, np.argwhere(mask))


def random_similarity(rng: np.random.Generator, points: np.ndarray) -> np.ndarray:
    """Points under a random rotation (or reflection), uniform scaling and translation."""
    dim = points.shape[1]
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    q *= np.sign(np.diag(r))
    return float(rng.uniform(0.1, 10.0)) * points @ q.T + rng.normal(size=dim) * 5


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def make_table(rng: np.random.Generator) -> Callable[[int], TableInstance]:
    return lambda size: monotone_table(rng, size)
