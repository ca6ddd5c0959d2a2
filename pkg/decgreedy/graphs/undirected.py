from __future__ import annotations

import logging
from collections import deque
from typing import Dict, List, Sequence, Tuple

import numpy as np
from networkx.utils import UnionFind
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..core import CycleResult, Direction, NoCycle, ReconstructionError
from ..utils import measure_exec_time_ms
from .digraph import WeightedMultigraph

__all__ = [
    'bottleneck_cycle_undirected', 'bottleneck_cycle_undirected_mst', 'undirected_path'
]


def undirected_path(
    n: int, edges: Sequence[Tuple[int, int, int]], start: int, goal: int
) -> Tuple[List[int], List[int]] | None:
    """
    Shortest path from ``start`` to ``goal`` over ``(edge id, u, v)`` triples.

    Returns ``(vertices, edge ids)`` with ``vertices[0] == start`` and ``vertices[-1] == goal``.
    """
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for e, u, v in edges:
        adj[u].append((e, v))
        adj[v].append((e, u))

    parent: Dict[int, Tuple[int, int]] = {start: (-1, -1)}
    queue = deque([start])

    while queue:
        x = queue.popleft()
        if x == goal:
            break
        for e, y in adj[x]:
            if y not in parent:
                parent[y] = (x, e)
                queue.append(y)

    if goal not in parent:
        return None

    vertices, path_edges = [goal], []
    while vertices[-1] != start:
        x, e = parent[vertices[-1]]
        vertices.append(x)
        path_edges.append(e)

    return vertices[::-1], path_edges[::-1]


def _close_cycle(g: WeightedMultigraph, e: int, allowed: np.ndarray, direction: Direction) -> CycleResult:
    u, v = int(g.tails[e]), int(g.heads[e])
    value = float(g.weights[e])

    if u == v:
        return CycleResult(value, [e], [u], direction)

    ids = np.flatnonzero(allowed)
    ids = ids[ids != e]
    found = undirected_path(g.n, list(zip(ids.tolist(), g.tails[ids].tolist(), g.heads[ids].tolist())), v, u)

    if found is None:
        raise ReconstructionError(f'no path closes the cycle through bottleneck edge {e}')

    vertices, path_edges = found
    return CycleResult(value, [e, *path_edges], [u, *vertices[:-1]], direction)


def _not_a_forest(a: np.ndarray, b: np.ndarray) -> bool:
    """Whether the edges ``a[i] -- b[i]`` contain a cycle."""
    if not len(a):
        return False
    if (a == b).any():
        return True

    nodes, inverse = np.unique(np.concatenate([a, b]), return_inverse=True)
    k = len(nodes)
    adj = coo_matrix((np.ones(len(a)), (inverse[:len(a)], inverse[len(a):])), shape=(k, k))
    n_components, _ = connected_components(adj, directed=False)

    return len(a) > k - n_components


def _contract(labels: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(labels)
    adj = coo_matrix((np.ones(len(a)), (a, b)), shape=(n, n))
    _, component = connected_components(adj, directed=False)
    return component[labels]


@measure_exec_time_ms
def bottleneck_cycle_undirected(g: WeightedMultigraph, direction: Direction = Direction.MAXMIN) -> CycleResult:
    """
    Bottleneck cycle of an undirected multigraph by median splitting.

    Each level splits the live edges at the median weight. If the heavy half closes a cycle in
    the contracted graph, the light half is dropped; otherwise the heavy half is a forest and
    gets contracted. The contracted state is a vertex labelling, every level costs
    O(n + live edges).
    """
    weights = g.oriented(direction)
    tails, heads = g.tails, g.heads

    if not _not_a_forest(tails, heads):
        raise NoCycle('the graph is a forest')

    active = np.arange(g.m)
    labels = np.arange(g.n)
    levels = 0

    while len(active) > 1:
        half = len(active) // 2
        split = np.argpartition(weights[active], half)
        light, heavy = active[split[:half]], active[split[half:]]

        a, b = labels[tails[heavy]], labels[heads[heavy]]
        if _not_a_forest(a, b):
            active = heavy
        else:
            labels = _contract(labels, a, b)
            active = light
        levels += 1

    e = int(active[0])
    logging.debug(f'bottleneck_cycle_undirected: bottleneck edge {e} after {levels} median levels')

    return _close_cycle(g, e, weights >= weights[e], direction)


@measure_exec_time_ms
def bottleneck_cycle_undirected_mst(g: WeightedMultigraph, direction: Direction = Direction.MAXMIN) -> CycleResult:
    """The first edge closing a cycle while building a maximum spanning forest is the bottleneck."""
    weights = g.oriented(direction)
    order = np.lexsort((np.arange(g.m), -weights))
    forest = UnionFind(range(g.n))
    taken = np.zeros(g.m, dtype=bool)

    for e in order.tolist():
        u, v = int(g.tails[e]), int(g.heads[e])
        if forest[u] == forest[v]:
            taken[e] = True
            return _close_cycle(g, e, taken, direction)
        forest.union(u, v)
        taken[e] = True

    raise NoCycle('the graph is a forest')
