from __future__ import annotations

import math
from typing import Dict, List, Tuple, Union

import networkx as nx

from ..core import CycleResult, Direction, InvalidInputError
from ..graphs import MixedGraph, PolarGraph, WeightedDigraph, WeightedMultigraph
from .budget import OracleBudget

__all__ = [
    'cycle_enumeration_oracle', 'enumerate_regular_cycles'
]


AnyGraph = Union[WeightedDigraph, WeightedMultigraph, MixedGraph, PolarGraph]
Moves = List[List[Tuple[int, int]]]


class _Best:
    def __init__(self, weights: List[float], direction: Direction) -> None:
        self.weights = weights
        self.direction = direction
        self.score = -math.inf
        self.result: CycleResult | None = None

    def offer(self, edges: List[int], vertices: List[int], poles: List[Tuple[int, int]] | None = None) -> None:
        raw = [self.weights[e] for e in edges]
        oriented = [self.direction.orient(w) for w in raw]
        score = min(oriented)
        if self.result is None or score > self.score:
            self.score = score
            self.result = CycleResult(raw[oriented.index(score)], list(edges), list(vertices), self.direction, poles)


def _directed(g: WeightedDigraph, best: _Best) -> None:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(g.n))
    pick: Dict[Tuple[int, int], int] = {}

    for e, (t, h, w) in enumerate(g.edges()):
        prev = pick.get((t, h))
        if prev is None or best.direction.orient(w) > best.direction.orient(best.weights[prev]):
            pick[t, h] = e
    graph.add_edges_from(pick)

    for cycle in nx.simple_cycles(graph):
        k = len(cycle)
        best.offer([pick[cycle[i], cycle[(i + 1) % k]] for i in range(k)], list(cycle))


def _simple_cycles(n: int, moves: Moves, best: _Best) -> None:
    """Every simple cycle, rooted at its smallest vertex; edges pairwise distinct."""

    def extend(s: int, x: int, vertices: List[int], edges: List[int]) -> None:
        for e, y in moves[x]:
            if e in edges:
                continue
            if y == s:
                best.offer(edges + [e], vertices)
            elif y > s and y not in vertices:
                extend(s, y, vertices + [y], edges + [e])

    for s in range(n):
        extend(s, s, [s], [])


def enumerate_regular_cycles(p: PolarGraph) -> List[Tuple[List[int], List[int], List[Tuple[int, int]]]]:
    """All regular cycles as ``(edges, vertices, (entry, exit) poles)``, each once per orientation."""
    inc: List[List[List[Tuple[int, int, int]]]] = [[[], []] for _ in range(p.n)]
    for e, (u, pu, v, pv, _) in enumerate(p.edges()):
        inc[u][pu].append((e, v, pv))
        inc[v][pv].append((e, u, pu))

    found = []

    def extend(
        s: int, first_exit: int, x: int, exit_pole: int, vertices: List[int], edges: List[int], entries: List[int]
    ) -> None:
        for e, y, entry in inc[x][exit_pole]:
            if e in edges:
                continue
            if y == s and entry != first_exit:
                poles = [(entry, first_exit)] + [(q, 1 - q) for q in entries]
                found.append((edges + [e], list(vertices), poles))
            elif y > s and y not in vertices:
                extend(s, first_exit, y, 1 - entry, vertices + [y], edges + [e], entries + [entry])

    for s in range(p.n):
        for pole in (0, 1):
            extend(s, pole, s, pole, [s], [], [])

    # a self-loop is walked once per end; keep the orientation that leaves through side 0
    return [c for c in found if len(c[0]) > 1 or c[2][0][1] == int(p.epu[c[0][0]])]


def cycle_enumeration_oracle(
    g: AnyGraph, direction: Direction = Direction.MAXMIN, budget: OracleBudget | None = None
) -> CycleResult | None:
    """Extremal cycle by exhaustive enumeration, ``None`` when the graph has none."""
    budget = budget or OracleBudget()
    budget.check('polar' if isinstance(g, PolarGraph) else 'cycle', g.n)
    best = _Best(g.weights.tolist(), direction)

    if isinstance(g, PolarGraph):
        for edges, vertices, poles in enumerate_regular_cycles(g):
            best.offer(edges, vertices, poles)
    elif isinstance(g, WeightedDigraph):
        _directed(g, best)
    elif isinstance(g, (WeightedMultigraph, MixedGraph)):
        moves: Moves = [[] for _ in range(g.n)]
        one_way = g.directed.tolist() if isinstance(g, MixedGraph) else [False] * g.m
        for e, (u, v) in enumerate(zip(g.tails.tolist(), g.heads.tolist())):
            moves[u].append((e, v))
            if not one_way[e] and u != v:
                moves[v].append((e, u))
        _simple_cycles(g.n, moves, best)
    else:
        raise InvalidInputError(f'no cycle oracle for {type(g).__name__}')

    return best.result
