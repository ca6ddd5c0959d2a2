from __future__ import annotations

import logging
from heapq import heapify, heappop, heappush
from typing import FrozenSet, List

from ..core import DegeneracyResult, InvalidInputError, Quality
from ..greedy import BottleneckInstance
from .graph import SimpleGraph

__all__ = [
    'REMOVAL_OPS_CONSTANT',
    'degeneracy', 'k_core', 'core_numbers', 'removal_complexity_check', 'DegreeInstance'
]


# every heap entry is pushed once and popped at most once: one per vertex, one per edge decrement
REMOVAL_OPS_CONSTANT = 2


def _bucket_pass(g: SimpleGraph) -> DegeneracyResult:
    """
    Bucket-queue peeling over the alive part of ``g``, lowest vertex id first among ties.

    Bucket d is a heap of vertex ids. A vertex whose degree drops is pushed into its new bucket
    and its old entry goes stale; stale entries are dropped when they reach the top. After a
    vertex of degree d leaves, no live degree is below d - 1, so the scan restarts there.
    """
    vertices = g.alive_vertices()
    count = len(vertices)

    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    alive = g.alive.tolist()
    deg = g.degree.tolist()

    max_deg = max((deg[v] for v in vertices), default=0)
    buckets: List[List[int]] = [[] for _ in range(max_deg + 1)]
    for v in vertices:
        buckets[deg[v]].append(v)
    for bucket in buckets:
        heapify(bucket)

    ops = count
    order: List[int] = []
    cores = [0] * g.n
    level = 0
    d = 0

    while len(order) < count:
        bucket = buckets[d]
        while bucket and (not alive[bucket[0]] or deg[bucket[0]] != d):
            heappop(bucket)
            ops += 1
        if not bucket:
            d += 1
            continue

        v = heappop(bucket)
        ops += 1
        alive[v] = False
        order.append(v)
        level = max(level, d)
        cores[v] = level

        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if alive[u]:
                deg[u] -= 1
                heappush(buckets[deg[u]], u)
                ops += 1

        d = max(d - 1, 0)

    core = frozenset(v for v in vertices if cores[v] == level)

    return DegeneracyResult(level, core, order, cores, ops)


def degeneracy(g: SimpleGraph) -> DegeneracyResult:
    """Degeneracy, its maximal core and a degeneracy ordering of the alive vertices."""
    if not g.alive.any():
        raise InvalidInputError('degeneracy: graph has no vertices')

    result = _bucket_pass(g)

    logging.debug(
        f'degeneracy: d={result.d}, |core|={len(result.core)}, {result.operations} bucket operations'
    )

    return result


def core_numbers(g: SimpleGraph) -> List[int]:
    """Largest k such that the vertex belongs to the k-core; 0 for removed vertices."""
    return _bucket_pass(g).core_numbers


def k_core(g: SimpleGraph, k: int) -> FrozenSet[int]:
    if k < 0:
        raise InvalidInputError('k_core: k must be non-negative')

    cores = core_numbers(g)
    return frozenset(v for v in g.alive_vertices() if cores[v] >= k)


def removal_complexity_check(g: SimpleGraph) -> int:
    """
    Bucket operations of one degeneracy pass.

    Always at most ``REMOVAL_OPS_CONSTANT * (n + m)``; a larger count is an internal error.
    """
    ops = _bucket_pass(g).operations
    bound = REMOVAL_OPS_CONSTANT * (g.n + g.m)

    if ops > bound:
        logging.error(f'removal_complexity_check: {ops} operations exceed {bound}')

    return ops


class DegreeInstance(BottleneckInstance):
    """Induced degree as element quality: the bottleneck subsets are the maximal cores."""

    def __init__(self, g: SimpleGraph) -> None:
        self.graph = g.copy()
        self.size = g.n

    @property
    def alive(self) -> FrozenSet[int]:
        return frozenset(self.graph.alive_vertices())

    def quality(self, x: int) -> Quality:
        if not self.graph.alive[x]:
            self._check_alive(x)
        return Quality(int(self.graph.degree[x]))

    def qualities(self) -> dict[int, Quality]:
        degree = self.graph.degree
        return {v: Quality(int(degree[v])) for v in self.graph.alive_vertices()}

    def remove(self, x: int) -> None:
        self.graph.remove_vertex(x)

    def clone(self) -> DegreeInstance:
        return DegreeInstance(self.graph.restored())
