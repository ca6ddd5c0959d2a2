from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

from ..core import Direction, InvalidInputError, ReconstructionError
from .digraph import WeightedDigraph, check_endpoints

__all__ = [
    'PolarGraph', 'PolarExpansion', 'DoubleCover', 'PolarStep',
    'expand_degree3', 'double_cover', 'project_cover_cycle', 'cycle_poles'
]


Incidence = List[List[List[Tuple[int, int]]]]


class PolarGraph:
    """
    Vertices with two poles; edge i joins pole ``epu[i]`` of ``eu[i]`` to pole ``epv[i]`` of ``ev[i]``.

    Side 0 of an edge is its ``eu`` end, side 1 its ``ev`` end.
    """

    __slots__ = ('n', 'eu', 'epu', 'ev', 'epv', 'weights')

    def __init__(
        self, n: int, eu: Iterable[int] = (), epu: Iterable[int] = (), ev: Iterable[int] = (),
        epv: Iterable[int] = (), weights: Iterable[float] = ()
    ) -> None:
        self.n = n
        self.eu, self.epu, self.ev, self.epv = (
            np.asarray(c if isinstance(c, np.ndarray) else list(c), dtype=np.int64) for c in (eu, epu, ev, epv)
        )
        self.weights = np.asarray(weights if isinstance(weights, np.ndarray) else list(weights), dtype=np.float64)

        if len({len(self.eu), len(self.epu), len(self.ev), len(self.epv), len(self.weights)}) != 1:
            raise InvalidInputError('edge columns differ in length')
        if np.isnan(self.weights).any():
            raise InvalidInputError('edge weights must not be NaN')
        check_endpoints(n, self.eu, self.ev)
        for poles in (self.epu, self.epv):
            if len(poles) and not np.isin(poles, (0, 1)).all():
                raise InvalidInputError('poles must be 0 or 1')

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[Tuple[int, int, int, int, float]]) -> PolarGraph:
        if not edges:
            return cls(n)
        return cls(n, *zip(*edges))

    @property
    def m(self) -> int:
        return len(self.weights)

    def edges(self) -> List[Tuple[int, int, int, int, float]]:
        return list(zip(
            self.eu.tolist(), self.epu.tolist(), self.ev.tolist(), self.epv.tolist(), self.weights.tolist()
        ))

    def end(self, e: int, side: int) -> Tuple[int, int]:
        if side == 0:
            return int(self.eu[e]), int(self.epu[e])
        return int(self.ev[e]), int(self.epv[e])

    def oriented(self, direction: Direction) -> np.ndarray:
        return self.weights if direction is Direction.MAXMIN else -self.weights

    def incidence(self) -> Incidence:
        """``inc[x][pole]`` lists the ``(edge, side)`` ends attached there."""
        inc: Incidence = [[[], []] for _ in range(self.n)]
        for e, (u, pu, v, pv) in enumerate(zip(
            self.eu.tolist(), self.epu.tolist(), self.ev.tolist(), self.epv.tolist()
        )):
            inc[u][pu].append((e, 0))
            inc[v][pv].append((e, 1))
        return inc

    def degree(self) -> np.ndarray:
        return np.bincount(np.concatenate([self.eu, self.ev]), minlength=self.n)

    def subgraph(self, keep: np.ndarray) -> Tuple[PolarGraph, np.ndarray]:
        """Graph on the kept edges, plus their ids in this graph."""
        ids = np.flatnonzero(keep)
        return PolarGraph(
            self.n, self.eu[ids], self.epu[ids], self.ev[ids], self.epv[ids], self.weights[ids]
        ), ids

    def __repr__(self) -> str:
        return f'PolarGraph(n={self.n}, m={self.m})'


def cycle_poles(p: PolarGraph, edges: Sequence[int], vertices: Sequence[int]) -> List[Tuple[int, int]]:
    """
    The (entry, exit) pole pair of each cycle vertex; edge i runs from ``vertices[i]`` to the next.

    Raises ``ReconstructionError`` unless the cycle is closed, vertex-simple and regular.
    """
    k = len(edges)
    if k == 0 or k != len(vertices) or len(set(vertices)) != k:
        raise ReconstructionError(f'not a vertex-simple cycle: edges {list(edges)}, vertices {list(vertices)}')

    exits, entries = [], []
    for i, e in enumerate(edges):
        a, b = vertices[i], vertices[(i + 1) % k]
        u, pu, v, pv = int(p.eu[e]), int(p.epu[e]), int(p.ev[e]), int(p.epv[e])

        if (u, v) == (a, b):
            exits.append(pu)
            entries.append(pv)
        elif (v, u) == (a, b):
            exits.append(pv)
            entries.append(pu)
        else:
            raise ReconstructionError(f'edge {e} does not join {a} and {b}')

    poles = [(entries[i - 1], exits[i]) for i in range(k)]
    for x, (entry, leave) in zip(vertices, poles):
        if entry == leave:
            raise ReconstructionError(f'cycle enters and leaves vertex {x} through pole {entry}')

    return poles


@dataclass
class PolarExpansion:
    vertex_origin: np.ndarray
    # -1 marks an added tree edge
    edge_origin: np.ndarray

    @property
    def tree_edges(self) -> np.ndarray:
        return np.flatnonzero(self.edge_origin < 0)

    def contract(self, edges: Sequence[int], vertices: Sequence[int]) -> Tuple[List[int], List[int]]:
        """Maps a cycle of the expanded graph back, dropping tree edges."""
        out_edges, out_vertices = [], []
        for e, x in zip(edges, vertices):
            if self.edge_origin[e] >= 0:
                out_edges.append(int(self.edge_origin[e]))
                out_vertices.append(int(self.vertex_origin[x]))
        return out_edges, out_vertices


def expand_degree3(p: PolarGraph, direction: Direction = Direction.MAXMIN) -> Tuple[PolarGraph, PolarExpansion]:
    """
    Replaces every vertex of degree d > 3 by a tree of d - 2 degree-3 vertices joined by d - 3 edges.

    A vertex with two or more edges on both poles hands all of its pole-0 edges to a new
    vertex; otherwise two edges of its crowded pole move. Either way the new vertex's other
    pole is tied back to the pole the edges left, so regular cycles pass through unchanged.
    Tree edges get the direction's neutral weight.
    """
    eu, epu, ev, epv = p.eu.tolist(), p.epu.tolist(), p.ev.tolist(), p.epv.tolist()
    weights = p.weights.tolist()
    edge_origin = list(range(p.m))
    vertex_origin = list(range(p.n))
    inc = p.incidence()

    def attach(e: int, side: int, x: int, pole: int) -> None:
        if side == 0:
            eu[e], epu[e] = x, pole
        else:
            ev[e], epv[e] = x, pole
        inc[x][pole].append((e, side))

    stack = [x for x in range(p.n) if len(inc[x][0]) + len(inc[x][1]) > 3]

    while stack:
        x = stack.pop()
        p0, p1 = inc[x]
        if len(p0) + len(p1) <= 3:
            continue

        if len(p0) >= 2 and len(p1) >= 2:
            pole, moved = 0, p0
            inc[x][0] = []
        else:
            pole = 0 if len(p0) >= 3 else 1
            moved = inc[x][pole][:2]
            inc[x][pole] = inc[x][pole][2:]

        a = len(vertex_origin)
        vertex_origin.append(vertex_origin[x])
        inc.append([[], []])
        for e, side in moved:
            attach(e, side, a, 0)

        t = len(weights)
        eu.append(a)
        epu.append(1)
        ev.append(x)
        epv.append(pole)
        weights.append(direction.neutral)
        edge_origin.append(-1)
        inc[a][1].append((t, 0))
        inc[x][pole].append((t, 1))

        stack.extend(y for y in (x, a) if len(inc[y][0]) + len(inc[y][1]) > 3)

    expanded = PolarGraph(len(vertex_origin), eu, epu, ev, epv, weights)

    if expanded.n != p.n:
        logging.debug(f'expand_degree3: {p!r} -> {expanded!r}')

    return expanded, PolarExpansion(np.asarray(vertex_origin, dtype=np.int64), np.asarray(edge_origin, dtype=np.int64))


@dataclass
class DoubleCover:
    """
    Directed graph on two copies of every polar vertex.

    Node ``2 x + c`` stands for being at x after entering through pole c. Arc ``2 e`` follows
    polar edge e from its side 0 to its side 1, arc ``2 e + 1`` the other way. Swapping the
    copies (``node ^ 1``) maps arc ``a`` onto the reverse of arc ``a ^ 1``.
    """

    polar: PolarGraph
    digraph: WeightedDigraph

    @staticmethod
    def node(x: int, pole: int) -> int:
        return 2 * x + pole

    @staticmethod
    def swap(node: int) -> int:
        return node ^ 1

    @staticmethod
    def partner(arc: int) -> int:
        return arc ^ 1

    def is_skew_symmetric(self) -> bool:
        t, h = self.digraph.tails, self.digraph.heads
        arcs = np.arange(self.digraph.m)
        partner = arcs ^ 1
        return bool(((t[partner] ^ 1) == h).all() and ((h[partner] ^ 1) == t).all())


def double_cover(p: PolarGraph) -> DoubleCover:
    forward_tail = 2 * p.eu + (1 - p.epu)
    forward_head = 2 * p.ev + p.epv
    backward_tail = 2 * p.ev + (1 - p.epv)
    backward_head = 2 * p.eu + p.epu

    tails = np.stack([forward_tail, backward_tail], axis=1).reshape(-1)
    heads = np.stack([forward_head, backward_head], axis=1).reshape(-1)
    weights = np.repeat(p.weights, 2)

    return DoubleCover(p, WeightedDigraph(2 * p.n, tails, heads, weights))


class PolarStep(NamedTuple):
    edge: int
    source: int
    exit_pole: int
    target: int
    entry_pole: int


def project_cover_cycle(cover: DoubleCover, arcs: Sequence[int]) -> List[PolarStep]:
    """Closed polar walk of a directed cover cycle; each step leaves through the pole opposite its entry."""
    p = cover.polar
    steps = []
    for a in arcs:
        e, backward = divmod(int(a), 2)
        (x, px), (y, py) = p.end(e, backward), p.end(e, 1 - backward)
        steps.append(PolarStep(e, x, px, y, py))

    for i, step in enumerate(steps):
        nxt = steps[(i + 1) % len(steps)]
        if nxt.source != step.target or nxt.exit_pole == step.entry_pole:
            raise ReconstructionError(f'cover cycle breaks between edges {step.edge} and {nxt.edge}')

    return steps
