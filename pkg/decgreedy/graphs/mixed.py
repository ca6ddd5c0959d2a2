from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
from networkx.utils import UnionFind

from ..core import CycleResult, Direction, InvalidInputError, ReconstructionError
from ..utils import measure_exec_time_ms
from .digraph import WeightedDigraph, check_endpoints
from .directed import bottleneck_cycle_directed
from .undirected import undirected_path

__all__ = [
    'MixedGraph', 'GadgetMapping', 'mixed_to_directed', 'bottleneck_cycle_mixed', 'walk_to_cycle',
    'GADGET_VERTEX_FACTOR'
]


# each undirected edge end costs 4 gadget vertices
GADGET_VERTEX_FACTOR = 8


class MixedGraph:
    """Edges are directed (``tails[i] -> heads[i]``) or undirected, per ``directed[i]``."""

    __slots__ = ('n', 'tails', 'heads', 'weights', 'directed')

    def __init__(
        self, n: int, tails: Iterable[int], heads: Iterable[int], weights: Iterable[float], directed: Iterable[bool]
    ) -> None:
        self.n = n
        self.tails = np.asarray(list(tails), dtype=np.int64)
        self.heads = np.asarray(list(heads), dtype=np.int64)
        self.weights = np.asarray(list(weights), dtype=np.float64)
        self.directed = np.asarray(list(directed), dtype=bool)

        if not (len(self.tails) == len(self.heads) == len(self.weights) == len(self.directed)):
            raise InvalidInputError('edge columns differ in length')
        if np.isnan(self.weights).any():
            raise InvalidInputError('edge weights must not be NaN')
        check_endpoints(n, self.tails, self.heads)

        loops = np.flatnonzero(~self.directed & (self.tails == self.heads))
        if len(loops):
            raise InvalidInputError(f'undirected self-loop {int(loops[0])}: it can only be walked as a u-turn')

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[Tuple[int, int, float, bool]]) -> MixedGraph:
        if not edges:
            return cls(n, [], [], [], [])
        t, h, w, d = zip(*edges)
        return cls(n, t, h, w, d)

    @property
    def m(self) -> int:
        return len(self.weights)

    def edges(self) -> List[Tuple[int, int, float, bool]]:
        return list(zip(
            self.tails.tolist(), self.heads.tolist(), self.weights.tolist(), self.directed.tolist()
        ))

    def oriented(self, direction: Direction) -> np.ndarray:
        return self.weights if direction is Direction.MAXMIN else -self.weights

    def __repr__(self) -> str:
        return f'MixedGraph(n={self.n}, m={self.m}, directed={int(self.directed.sum())})'


@dataclass
class GadgetMapping:
    """Per arc of the expansion: the mixed edge it stands for (-1 inside a gadget) and whether it runs tail to head."""

    edge: np.ndarray
    forward: np.ndarray

    def walk(self, arcs: Sequence[int]) -> List[Tuple[int, bool]]:
        return [(int(self.edge[a]), bool(self.forward[a])) for a in arcs if self.edge[a] >= 0]


class _Builder:
    def __init__(self, neutral: float) -> None:
        self.count = 0
        self.neutral = neutral
        self.arcs: List[Tuple[int, int, float, int, bool]] = []

    def vertices(self, k: int) -> List[int]:
        self.count += k
        return list(range(self.count - k, self.count))

    def arc(self, t: int, h: int, weight: float | None = None, edge: int = -1, forward: bool = True) -> None:
        self.arcs.append((t, h, self.neutral if weight is None else weight, edge, forward))


def mixed_to_directed(
    g: MixedGraph, direction: Direction = Direction.MAXMIN
) -> Tuple[WeightedDigraph, GadgetMapping]:
    """
    Expands every vertex with undirected edges into a gadget whose walks never make u-turns.

    With doubled numbering, the k-th undirected edge at a vertex owns the odd number 2k + 1,
    and path vertices sit on the even numbers 0 .. 2d. The incoming terminal 2k + 1 feeds the
    increasing path at 2k + 2 and the decreasing path at 2k; the outgoing terminal 2k + 1 is
    fed by the increasing path at 2k and the decreasing path at 2k + 2. Walking up from 2k + 2
    or down from 2k never reaches terminal 2k + 1 again. Directed edges enter at the bottom of
    the increasing path and leave from its top.

    Gadget arcs weigh the direction's neutral value, an IEEE float +inf or -inf in the float64
    weight array rather than a ``Quality``, so they are never the bottleneck.
    """
    b = _Builder(direction.neutral)
    tails, heads = g.tails.tolist(), g.heads.tolist()

    undirected: List[List[int]] = [[] for _ in range(g.n)]
    for e in np.flatnonzero(~g.directed).tolist():
        undirected[tails[e]].append(e)
        undirected[heads[e]].append(e)

    entry, leave = [0] * g.n, [0] * g.n
    terminal_in: Dict[Tuple[int, int], int] = {}
    terminal_out: Dict[Tuple[int, int], int] = {}

    for x in range(g.n):
        d = len(undirected[x])
        if d == 0:
            entry[x] = leave[x] = b.vertices(1)[0]
            continue

        # even numbers 0..2d on the increasing path, 2..2d-2 on the decreasing one
        up = dict(zip(range(0, 2 * d + 1, 2), b.vertices(d + 1)))
        down = dict(zip(range(2, 2 * d - 1, 2), b.vertices(d - 1)))

        for j in range(0, 2 * d, 2):
            b.arc(up[j], up[j + 2])
        for j in range(2 * d - 2, 2, -2):
            b.arc(down[j], down[j - 2])

        for k, e in enumerate(undirected[x]):
            odd = 2 * k + 1
            t_in, t_out = b.vertices(2)
            terminal_in[x, e], terminal_out[x, e] = t_in, t_out

            b.arc(t_in, up[odd + 1])
            if odd - 1 in down:
                b.arc(t_in, down[odd - 1])
            b.arc(up[odd - 1], t_out)
            if odd + 1 in down:
                b.arc(down[odd + 1], t_out)

        entry[x], leave[x] = up[0], up[2 * d]

    weights = g.weights.tolist()
    for e in range(g.m):
        u, v = tails[e], heads[e]
        if g.directed[e]:
            b.arc(leave[u], entry[v], weights[e], e, True)
        else:
            b.arc(terminal_out[u, e], terminal_in[v, e], weights[e], e, True)
            b.arc(terminal_out[v, e], terminal_in[u, e], weights[e], e, False)

    t, h, w, edge, forward = zip(*b.arcs) if b.arcs else ((), (), (), (), ())
    digraph = WeightedDigraph(b.count, t, h, w)
    mapping = GadgetMapping(np.asarray(edge, dtype=np.int64), np.asarray(forward, dtype=bool))

    logging.debug(f'mixed_to_directed: {g!r} expanded to {digraph!r}')

    return digraph, mapping


def walk_to_cycle(g: MixedGraph, walk: Sequence[Tuple[int, bool]]) -> Tuple[List[int], List[int]]:
    """
    Extracts a simple cycle from a closed u-turn-free walk, using only the walk's edges.

    Returns ``(edges, vertices)`` with edge i running from ``vertices[i]`` to the next vertex.
    """
    tails, heads = g.tails.tolist(), g.heads.tolist()
    plain = sorted({e for e, _ in walk if not g.directed[e]})

    forest = UnionFind(range(g.n))
    tree: List[Tuple[int, int, int]] = []

    for e in plain:
        u, v = tails[e], heads[e]
        if forest[u] == forest[v]:
            found = undirected_path(g.n, tree, v, u)
            if found is None:
                raise ReconstructionError(f'undirected edge {e} closes no cycle')
            vertices, path = found
            return [e, *path], [u, *vertices[:-1]]
        forest.union(u, v)
        tree.append((e, u, v))

    # the undirected part is a forest; its trees act as single vertices
    first_out: Dict[int, int] = {}
    for e, _ in walk:
        if g.directed[e]:
            first_out.setdefault(forest[tails[e]], e)

    if not first_out:
        raise ReconstructionError('closed walk without directed edges over an undirected forest')

    seen: Dict[int, int] = {}
    chain: List[int] = []
    node = next(iter(first_out))

    while node not in seen:
        seen[node] = len(chain)
        e = first_out.get(node)
        if e is None:
            raise ReconstructionError(f'walk enters tree {node} but never leaves it')
        chain.append(e)
        node = forest[heads[e]]

    arcs = chain[seen[node]:]
    edges: List[int] = []
    vertices: List[int] = []

    for i, e in enumerate(arcs):
        edges.append(e)
        vertices.append(tails[e])
        nxt = tails[arcs[(i + 1) % len(arcs)]]
        found = undirected_path(g.n, tree, heads[e], nxt)
        if found is None:
            raise ReconstructionError(f'no tree path from {heads[e]} to {nxt}')
        inner, path = found
        edges.extend(path)
        vertices.extend(inner[:-1])

    return edges, vertices


@measure_exec_time_ms
def bottleneck_cycle_mixed(g: MixedGraph, direction: Direction = Direction.MAXMIN) -> CycleResult:
    """Bottleneck cycle of a mixed graph: gadget expansion, directed solve, then walk-to-cycle extraction."""
    digraph, mapping = mixed_to_directed(g, direction)
    found = bottleneck_cycle_directed(digraph, direction)

    edges, vertices = walk_to_cycle(g, mapping.walk(found.edges))
    oriented = g.oriented(direction)[edges]
    value = float(g.weights[edges][int(np.argmin(oriented))])

    if oriented.min() < direction.orient(found.value):
        raise ReconstructionError(f'extracted cycle is worse ({value}) than the walk it came from ({found.value})')

    return CycleResult(
        value, edges, vertices, direction,
        diagnostics={
            'gadget_vertices': digraph.n, 'gadget_edges': digraph.m, 'rounds': found.diagnostics.get('rounds')
        }
    )
