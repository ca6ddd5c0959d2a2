from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from ..core import CycleResult, Direction, InvalidInputError, NoCycle, ReconstructionError
from ..utils import measure_exec_time_ms
from .digraph import WeightedDigraph

__all__ = [
    'BlockPartition', 'bottleneck_cycle_directed_sorted', 'bottleneck_cycle_directed', 'sorted_edge_order'
]


class _GreedyRun(NamedTuple):
    edge: int
    # vertices as themselves, edges as ~e
    log: List[int]
    position: int
    weight_removals: int


def sorted_edge_order(weights: np.ndarray) -> np.ndarray:
    """Edge ids by ascending weight, ties by id."""
    return np.lexsort((np.arange(len(weights)), weights))


def _sorted_greedy(g: WeightedDigraph, order: Sequence[int], out: List[List[int]], inc: List[List[int]]) -> _GreedyRun:
    tails, heads = g.tails.tolist(), g.heads.tolist()
    n, m = g.n, g.m

    indeg, outdeg = [0] * n, [0] * n
    for t in tails:
        outdeg[t] += 1
    for h in heads:
        indeg[h] += 1

    alive_v, alive_e = [True] * n, [True] * m
    ready = [v for v in range(n) if not indeg[v] or not outdeg[v]]
    log: List[int] = []
    live = m
    remembered, position, by_weight, ptr = -1, 0, 0, 0

    while True:
        while ready:
            v = ready.pop()
            if not alive_v[v]:
                continue
            alive_v[v] = False
            log.append(v)

            for e in out[v]:
                if alive_e[e]:
                    alive_e[e] = False
                    live -= 1
                    log.append(~e)
                    h = heads[e]
                    indeg[h] -= 1
                    if not indeg[h] and alive_v[h]:
                        ready.append(h)

            for e in inc[v]:
                if alive_e[e]:
                    alive_e[e] = False
                    live -= 1
                    log.append(~e)
                    t = tails[e]
                    outdeg[t] -= 1
                    if not outdeg[t] and alive_v[t]:
                        ready.append(t)

        if not live:
            break

        while not alive_e[order[ptr]]:
            ptr += 1

        e = order[ptr]
        remembered, position = e, len(log)
        by_weight += 1

        alive_e[e] = False
        live -= 1
        log.append(~e)

        t, h = tails[e], heads[e]
        outdeg[t] -= 1
        indeg[h] -= 1
        if not outdeg[t]:
            ready.append(t)
        if not indeg[h]:
            ready.append(h)

    return _GreedyRun(remembered, log, position, by_weight)


def _directed_path(
    out: List[List[int]], heads: List[int], alive: List[bool], start: int, goal: int
) -> Tuple[List[int], List[int]] | None:
    parent = {start: (-1, -1)}
    queue = deque([start])

    while queue:
        x = queue.popleft()
        if x == goal:
            break
        for e in out[x]:
            y = heads[e]
            if alive[e] and y not in parent:
                parent[y] = (x, e)
                queue.append(y)

    if goal not in parent:
        return None

    vertices, edges = [goal], []
    while vertices[-1] != start:
        x, e = parent[vertices[-1]]
        vertices.append(x)
        edges.append(e)

    return vertices[::-1], edges[::-1]


def _reconstruct(g: WeightedDigraph, run: _GreedyRun, out: List[List[int]], direction: Direction) -> CycleResult:
    """Replays the removals that preceded the bottleneck edge and closes it with a head-to-tail path."""
    e = run.edge
    t, h = int(g.tails[e]), int(g.heads[e])
    value = float(g.weights[e])

    if t == h:
        return CycleResult(value, [e], [t], direction)

    alive = [True] * g.m
    for entry in run.log[:run.position]:
        if entry < 0:
            alive[~entry] = False
    alive[e] = False

    found = _directed_path(out, g.heads.tolist(), alive, h, t)
    if found is None:
        raise ReconstructionError(f'no path from head {h} to tail {t} of bottleneck edge {e}')

    vertices, edges = found
    return CycleResult(value, [e, *edges], [t, *vertices[:-1]], direction)


@measure_exec_time_ms
def bottleneck_cycle_directed_sorted(
    g: WeightedDigraph, order: Sequence[int] | np.ndarray | None = None, direction: Direction = Direction.MAXMIN
) -> CycleResult:
    """
    Linear-time bottleneck cycle for edges already sorted by weight.

    Vertices without live in- or out-edges cannot lie on a cycle and are removed first;
    when none is left the lightest live edge goes. The last edge removed that way is the
    bottleneck, and the graph it was removed from holds a cycle through it.
    """
    if order is None:
        order = sorted_edge_order(g.oriented(direction))
    elif sorted(np.asarray(order).tolist()) != list(range(g.m)):
        raise InvalidInputError('order must be a permutation of the edge ids')

    out, inc = g.out_lists(), g.in_lists()
    run = _sorted_greedy(g, np.asarray(order).tolist(), out, inc)

    if run.edge < 0:
        raise NoCycle('the graph is acyclic')

    result = _reconstruct(g, run, out, direction)
    result.diagnostics['weight_removals'] = run.weight_removals
    return result


@dataclass
class BlockPartition:
    """
    The weight range known to hold the bottleneck, as a block of edges sorted by (weight, id).

    ``alphas`` lists the schedule 1, 2, 4, 16, 65536, ... one entry per round started; the
    block of round i has at most m / alpha_i edges.
    """

    m: int
    block: np.ndarray
    below: np.ndarray
    above: np.ndarray
    alphas: List[int] = field(default_factory=lambda: [1])

    @classmethod
    def initial(cls, weights: np.ndarray) -> BlockPartition:
        m = len(weights)
        return cls(m, sorted_edge_order(weights), np.zeros(m, dtype=bool), np.zeros(m, dtype=bool))

    @property
    def chunk_size(self) -> int:
        alpha = self.alphas[-1]
        # 2 ** alpha exceeds any edge count from here on
        if alpha >= 64:
            return 1
        return max(1, math.ceil(self.m / 2 ** alpha))

    @property
    def chunk_count(self) -> int:
        return math.ceil(len(self.block) / self.chunk_size)

    def keys(self) -> np.ndarray:
        """Below-block edges 0, chunk j of the block j + 1, above-block edges one past the last chunk."""
        keys = np.zeros(self.m, dtype=np.int64)
        keys[self.above] = self.chunk_count + 1
        keys[self.block] = np.arange(len(self.block)) // self.chunk_size + 1
        return keys

    def narrow(self, chunk: int) -> None:
        size = self.chunk_size
        self.below[self.block[:chunk * size]] = True
        self.above[self.block[(chunk + 1) * size:]] = True
        self.block = self.block[chunk * size:(chunk + 1) * size]
        alpha = self.alphas[-1]
        self.alphas.append(2 ** alpha if alpha < 64 else alpha)

    def single_weight(self, weights: np.ndarray) -> bool:
        w = weights[self.block]
        return bool(w[0] == w[-1])


def _cyclic(n: int, tails: np.ndarray, heads: np.ndarray, mask: np.ndarray) -> bool:
    """Whether the edges under ``mask`` hold a directed cycle: a loop or a strong component of two or more."""
    t, h = tails[mask], heads[mask]
    if not len(t):
        return False
    if (t == h).any():
        return True
    graph = coo_matrix((np.ones(len(t), dtype=np.int32), (t, h)), shape=(n, n)).tocsr()
    count, _ = connected_components(graph, directed=True, connection='strong')
    return bool(count < n)


def _closing_path(
    n: int, tails: np.ndarray, heads: np.ndarray, mask: np.ndarray, start: int, goal: int
) -> Tuple[List[int], List[int]] | None:
    """Shortest directed path over the edges under ``mask``, as (vertices, edges)."""
    ids = np.flatnonzero(mask)
    t, h = tails[ids], heads[ids]
    graph = coo_matrix((np.ones(len(ids), dtype=np.int32), (t, h)), shape=(n, n)).tocsr()
    _, pred = breadth_first_order(graph, start, directed=True, return_predecessors=True)

    if pred[goal] < 0:
        return None

    vertices = [goal]
    while vertices[-1] != start:
        vertices.append(int(pred[vertices[-1]]))
    vertices.reverse()

    # one edge per (tail, head) pair is enough for a simple path
    pairs, first = np.unique(t.astype(np.int64) * n + h, return_index=True)
    path = np.asarray(vertices, dtype=np.int64)
    wanted = path[:-1] * n + path[1:]
    edges = ids[first[np.searchsorted(pairs, wanted)]].tolist()

    return vertices, edges


@measure_exec_time_ms
def bottleneck_cycle_directed(g: WeightedDigraph, direction: Direction = Direction.MAXMIN) -> CycleResult:
    """
    Bottleneck cycle with the weight-clustering refinement.

    Each round cuts the current block into chunks and keeps the chunk holding the bottleneck:
    the last chunk whose edges, together with every edge above the block, still hold a cycle.
    That is the chunk the sorted greedy would end in when run on chunk numbers instead of
    weights, and it is found by bisection with strong components instead of a peel. Rounds stop
    once the chunk carries a single weight; the bottleneck edge inside it is the last one
    whose removal leaves the edges above it acyclic.
    """
    if g.m == 0:
        raise NoCycle('the graph has no edges')

    n, tails, heads = g.n, g.tails, g.heads
    weights = g.oriented(direction)
    part = BlockPartition.initial(weights)

    if not _cyclic(n, tails, heads, np.ones(g.m, dtype=bool)):
        raise NoCycle('the graph is acyclic')

    rounds, probes = 0, 0

    while True:
        rounds += 1
        keys = part.keys()
        # edges keyed above lo hold a cycle, edges keyed above hi do not
        lo, hi = 0, part.chunk_count

        while hi - lo > 1:
            mid = (lo + hi) // 2
            probes += 1
            if _cyclic(n, tails, heads, keys > mid):
                lo = mid
            else:
                hi = mid

        part.narrow(lo)
        if part.single_weight(weights):
            break

    block = part.block
    lo, hi = 0, len(block)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        probes += 1
        mask = part.above.copy()
        mask[block[mid:]] = True
        if _cyclic(n, tails, heads, mask):
            lo = mid
        else:
            hi = mid

    e = int(block[lo])
    t, h = int(tails[e]), int(heads[e])
    value = float(g.weights[e])

    if t == h:
        result = CycleResult(value, [e], [t], direction)
    else:
        mask = part.above.copy()
        mask[block[lo + 1:]] = True
        found = _closing_path(n, tails, heads, mask, h, t)
        if found is None:
            raise ReconstructionError(f'no path from head {h} to tail {t} of bottleneck edge {e}')
        vertices, edges = found
        result = CycleResult(value, [e, *edges], [t, *vertices[:-1]], direction)

    result.diagnostics.update(rounds=rounds, alphas=part.alphas[:rounds], probes=probes)
    logging.debug(f'bottleneck_cycle_directed: {rounds} rounds, {probes} probes, value {result.value}')

    return result
