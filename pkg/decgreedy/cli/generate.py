from __future__ import annotations

import numpy as np

from ..core import GraphKind, InvalidInputError
from ..graphs import MixedGraph, PolarGraph, WeightedDigraph, WeightedMultigraph
from .formats import AnyGraph

__all__ = [
    'POINT_KINDS', 'random_points', 'random_graph'
]


POINT_KINDS = {'points2d': 2, 'points3d': 3}

# few distinct weights so that ties show up in small instances
WEIGHT_LEVELS = 10


def random_points(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """Uniform points in the unit square or cube."""
    if n < 0:
        raise InvalidInputError('random_points: negative point count')
    return rng.random((n, dim))


def random_graph(rng: np.random.Generator, kind: GraphKind, n: int, m: int) -> AnyGraph:
    """
    Uniform random endpoints and integer weights in ``0..WEIGHT_LEVELS - 1``.

    Loops and parallel edges are allowed, except undirected loops in mixed graphs, which are
    redrawn as directed ones.
    """
    if n <= 0 or m < 0:
        raise InvalidInputError(f'random_graph: need n > 0 and m >= 0, got n={n}, m={m}')

    tails = rng.integers(0, n, m)
    heads = rng.integers(0, n, m)
    weights = rng.integers(0, WEIGHT_LEVELS, m).astype(np.float64)

    if kind is GraphKind.UNDIRECTED:
        return WeightedMultigraph(n, tails, heads, weights)
    if kind is GraphKind.DIRECTED:
        return WeightedDigraph(n, tails, heads, weights)
    if kind is GraphKind.MIXED:
        directed = rng.random(m) < 0.5
        directed |= tails == heads
        return MixedGraph(n, tails.tolist(), heads.tolist(), weights.tolist(), directed.tolist())

    poles = rng.integers(0, 2, (2, m))
    return PolarGraph(n, tails, poles[0], heads, poles[1], weights)
