from __future__ import annotations

import logging
from collections import deque
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from ..core import CycleResult, Direction, NoCycle, ReconstructionError
from ..utils import measure_exec_time_ms
from .bridges import find_bridges
from .directed import sorted_edge_order
from .polar import PolarGraph, cycle_poles, expand_degree3

__all__ = [
    'regular_path', 'find_regular_cycle', 'bottleneck_regular_cycle', 'PolarReduction'
]


Path = Tuple[List[int], List[int]]


class PolarReduction:
    """
    Alive edges and vertices of a polar graph under the two structural removals.

    A vertex whose live edges all sit on one pole, and a bridge of the underlying undirected
    graph, lie on no regular cycle. Once removable they stay removable, so ``reduce`` reaches
    the same state whatever order it removes them in.

    ``removals`` logs every removal in order as ``(kind, id)``: ``'edge'`` and ``'bridge'``
    carry an edge id, ``'vertex'`` a single-pole vertex whose live edges went with it.
    """

    def __init__(self, g: PolarGraph) -> None:
        self.g = g
        self.inc = g.incidence()
        self.ends = list(zip(g.eu.tolist(), g.epu.tolist(), g.ev.tolist(), g.epv.tolist()))
        self.alive_e = [True] * g.m
        self.alive_v = [True] * g.n
        self.count = [0] * (2 * g.n)
        for x in range(g.n):
            self.count[2 * x], self.count[2 * x + 1] = len(self.inc[x][0]), len(self.inc[x][1])
        self.live = g.m
        self.pending: List[int] = []
        self.removals: List[Tuple[str, int]] = []
        self.single_pole_removed = 0
        self.bridge_passes = 0

    def copy(self) -> PolarReduction:
        other = object.__new__(PolarReduction)
        other.g, other.inc, other.ends = self.g, self.inc, self.ends
        other.alive_e, other.alive_v, other.count = self.alive_e.copy(), self.alive_v.copy(), self.count.copy()
        other.live, other.pending = self.live, self.pending.copy()
        other.removals = self.removals.copy()
        other.single_pole_removed, other.bridge_passes = self.single_pole_removed, self.bridge_passes
        return other

    @property
    def bridges(self) -> List[int]:
        return [e for kind, e in self.removals if kind == 'bridge']

    @property
    def bridges_removed(self) -> int:
        return len(self.bridges)

    def remove_edge(self, e: int, kind: str = 'edge') -> None:
        if not self.alive_e[e]:
            return
        self.removals.append((kind, e))
        self._drop(e)

    def _drop(self, e: int) -> None:
        self.alive_e[e] = False
        self.live -= 1
        u, pu, v, pv = self.ends[e]
        self.count[2 * u + pu] -= 1
        self.count[2 * v + pv] -= 1
        self.pending.append(u)
        self.pending.append(v)

    def remove_vertex(self, x: int) -> None:
        self.alive_v[x] = False
        self.removals.append(('vertex', x))
        for pole in (0, 1):
            for e, _ in self.inc[x][pole]:
                if self.alive_e[e]:
                    self._drop(e)

    def cascade(self) -> None:
        count, alive_v = self.count, self.alive_v
        while self.pending:
            x = self.pending.pop()
            if alive_v[x] and (not count[2 * x] or not count[2 * x + 1]):
                self.remove_vertex(x)
                self.single_pole_removed += 1

    def live_edges(self) -> List[int]:
        return [e for e, alive in enumerate(self.alive_e) if alive]

    def reduce(self) -> None:
        self.pending.extend(x for x, alive in enumerate(self.alive_v) if alive)

        while True:
            self.cascade()
            if not self.live:
                return

            ends = self.ends
            bridges = find_bridges(self.g.n, ((e, ends[e][0], ends[e][2]) for e in self.live_edges()))
            if not bridges:
                return

            self.bridge_passes += 1
            for e in bridges:
                self.remove_edge(e, 'bridge')


def regular_path(
    p: PolarGraph, start: Tuple[int, int], goal: Tuple[int, int], alive: Sequence[bool] | None = None,
    exclude: int = -1, warn_vertices: int = 10_000
) -> Path | None:
    """
    Vertex-simple path that leaves ``start[0]`` through pole ``start[1]`` and arrives at ``goal[0]``
    through pole ``goal[1]``, crossing every vertex in between from one pole to the other.

    Returns ``(edges, vertices)``. A breadth-first search of the double cover usually already
    gives a vertex-simple path; when it visits both copies of some vertex, an exhaustive
    backtracking search ordered by cover distance to the goal takes over.
    """
    if p.n > warn_vertices:
        logging.warning(f'regular_path: {p.n} vertices, backtracking may be slow')

    s, ps = start
    t, pt = goal
    begin, target = 2 * s + 1 - ps, 2 * t + pt
    inc = p.incidence()

    def usable(e: int) -> bool:
        return e != exclude and (alive is None or alive[e])

    def successors(node: int) -> Iterator[Tuple[int, int]]:
        x, c = divmod(node, 2)
        for e, side in inc[x][1 - c]:
            if usable(e):
                y, py = p.end(e, 1 - side)
                yield e, 2 * y + py

    parent: Dict[int, Tuple[int, int]] = {begin: (-1, -1)}
    queue = deque([begin])
    hit: Tuple[int, int] | None = None

    while queue and hit is None:
        node = queue.popleft()
        for e, nb in successors(node):
            if nb == target:
                hit = (node, e)
                break
            if nb // 2 not in (s, t) and nb not in parent:
                parent[nb] = (node, e)
                queue.append(nb)

    if hit is None:
        return None

    node, e = hit
    nodes, edges = [node], [e]
    while node != begin:
        node, e = parent[node]
        nodes.append(node)
        edges.append(e)

    vertices = [x // 2 for x in reversed(nodes)] + [t]
    inner = vertices[1:-1]
    if len(set(inner)) == len(inner):
        return edges[::-1], vertices

    return _backtrack(p, begin, target, s, t, successors, inc, usable)


def _backtrack(
    p: PolarGraph, begin: int, target: int, s: int, t: int, successors: Callable[[int], Iterator[Tuple[int, int]]],
    inc: List[List[List[Tuple[int, int]]]], usable: Callable[[int], bool]
) -> Path | None:
    # cover distance to the target, over reversed arcs
    dist = {target: 0}
    queue = deque([target])
    while queue:
        node = queue.popleft()
        y, py = divmod(node, 2)
        if y in (s, t) and node != target:
            continue
        for e, side in inc[y][py]:
            if usable(e):
                x, px = p.end(e, 1 - side)
                prev = 2 * x + 1 - px
                if prev not in dist:
                    dist[prev] = dist[node] + 1
                    queue.append(prev)

    if begin not in dist:
        return None

    def options(node: int) -> Iterator[Tuple[int, int]]:
        return iter(sorted((pair for pair in successors(node) if pair[1] in dist), key=lambda pair: dist[pair[1]]))

    blocked = {s, t}
    nodes, edges = [begin], []
    stack = [options(begin)]

    while stack:
        for e, nb in stack[-1]:
            if nb == target:
                edges.append(e)
                nodes.append(nb)
                return edges, [node // 2 for node in nodes]
            if nb // 2 in blocked:
                continue
            blocked.add(nb // 2)
            nodes.append(nb)
            edges.append(e)
            stack.append(options(nb))
            break
        else:
            stack.pop()
            if stack:
                edges.pop()
                blocked.discard(nodes.pop() // 2)

    return None


def find_regular_cycle(p: PolarGraph, alive: Sequence[bool] | None = None) -> Path | None:
    """Some regular cycle, found by closing each live edge with a regular path; ``(edges, vertices)``."""
    for e, (u, pu, v, pv, _) in enumerate(p.edges()):
        if alive is not None and not alive[e]:
            continue
        if u == v:
            if pu != pv:
                return [e], [u]
            continue
        found = regular_path(p, (v, 1 - pv), (u, 1 - pu), alive, exclude=e)
        if found is not None:
            path_edges, vertices = found
            return [e, *path_edges], [u, *vertices[:-1]]
    return None


@measure_exec_time_ms
def bottleneck_regular_cycle(
    p: PolarGraph, direction: Direction = Direction.MAXMIN, warn_vertices: int = 10_000
) -> CycleResult:
    """
    Bottleneck regular cycle of a polar graph.

    Same-pole loops are dropped and the graph is expanded to maximum degree 3. Then single-pole
    vertices and bridges are removed whenever present, and otherwise the lightest live edge.
    The lightest edges leave in sorted order, so the run is determined by how many of them go
    before the graph empties; that count is found by bisection, each probe continuing from the
    last state that still held a cycle. The last lightest edge removed is the bottleneck, and
    the state it was removed from holds a regular cycle through it.
    """
    keep = ~((p.eu == p.ev) & (p.epu == p.epv))
    sub, ids = p.subgraph(keep)
    expanded, expansion = expand_degree3(sub, direction)

    best = PolarReduction(expanded)
    best.reduce()
    if not best.live:
        raise NoCycle('no regular cycle')

    order = [e for e in sorted_edge_order(expanded.oriented(direction)).tolist() if expansion.edge_origin[e] >= 0]
    lo, hi, probes = 0, len(order), 0

    while hi - lo > 1:
        mid = (lo + hi) // 2
        trial = best.copy()
        for e in order[lo:mid]:
            trial.remove_edge(e)
        trial.reduce()
        probes += 1

        if trial.live:
            lo, best = mid, trial
        else:
            hi = mid

    e = order[lo]
    if not best.alive_e[e]:
        raise ReconstructionError(f'bottleneck edge {e} did not survive the reduction')

    u, pu, v, pv = best.ends[e]
    if u == v:
        cycle: Path = ([e], [u])
    else:
        found = regular_path(expanded, (v, 1 - pv), (u, 1 - pu), best.alive_e, e, warn_vertices)
        if found is None:
            raise ReconstructionError(f'no regular path closes the cycle through bottleneck edge {e}')
        cycle = ([e, *found[0]], [u, *found[1][:-1]])

    sub_edges, vertices = expansion.contract(*cycle)
    edges = ids[sub_edges].tolist()
    poles = cycle_poles(p, edges, vertices)

    value = float(expanded.weights[e])
    oriented = p.oriented(direction)[edges]
    if oriented.min() != direction.orient(value):
        raise ReconstructionError(f'cycle extreme {oriented.min()} differs from bottleneck {value}')

    logging.debug(
        f'bottleneck_regular_cycle: {probes} probes, {best.bridges_removed} bridges in {best.bridge_passes} passes'
    )

    return CycleResult(
        value, edges, vertices, direction, poles,
        diagnostics={
            'expanded_vertices': expanded.n, 'expanded_edges': expanded.m, 'probes': probes,
            'bridges': best.bridges, 'removals': best.removals
        }
    )
