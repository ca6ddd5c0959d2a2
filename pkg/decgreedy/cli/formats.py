from __future__ import annotations

from pathlib import Path
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from ..core import GraphKind, InvalidInputError, ParseError
from ..degeneracy import SimpleGraph
from ..graphs import MixedGraph, PolarGraph, WeightedDigraph, WeightedMultigraph

__all__ = [
    'AnyGraph',
    'parse_points', 'parse_graph', 'graph_kind', 'as_simple_graph',
    'write_points', 'write_graph'
]


AnyGraph = Union[WeightedMultigraph, WeightedDigraph, MixedGraph, PolarGraph]

_MIXED_ARROWS = {'--': False, '->': True}


def _content_lines(path: Path) -> Iterator[Tuple[int, List[str]]]:
    """Numbered, tokenised lines with comments and blank lines skipped."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f'cannot read {path}: {e}') from None

    for number, line in enumerate(text.splitlines(), 1):
        tokens = line.split('#', 1)[0].split()
        if tokens:
            yield number, tokens


def _number(token: str, line: int, kind: type = float) -> float:
    try:
        value = kind(token)
    except ValueError:
        raise ParseError(f'expected {"an integer" if kind is int else "a number"}, got {token!r}', line) from None
    if kind is float and not np.isfinite(value):
        raise ParseError(f'non-finite value {token!r}', line)
    return value


def parse_points(path: Path, dim: int | None = None) -> np.ndarray:
    """
    Whitespace-separated coordinates, one point per line, ``#`` starting a comment.

    All lines must have the same number of columns, 2 or 3 (or exactly ``dim`` when given).
    """
    rows: List[List[float]] = []
    width = dim

    for number, tokens in _content_lines(path):
        if width is None:
            if len(tokens) not in (2, 3):
                raise ParseError(f'expected 2 or 3 coordinates, got {len(tokens)}', number)
            width = len(tokens)
        elif len(tokens) != width:
            raise ParseError(f'expected {width} coordinates, got {len(tokens)}', number)
        rows.append([_number(t, number) for t in tokens])

    if not rows:
        raise ParseError(f'{path} holds no points', 1)

    return np.asarray(rows, dtype=np.float64)


def _vertex(token: str, n: int, line: int) -> int:
    v = int(_number(token, line, int))
    if not 0 <= v < n:
        raise ParseError(f'vertex {v} outside 0..{n - 1}', line)
    return v


def _pole(token: str, line: int) -> int:
    if token not in ('0', '1'):
        raise ParseError(f'pole must be 0 or 1, got {token!r}', line)
    return int(token)


def parse_graph(path: Path) -> AnyGraph:
    """
    Graph file: a header ``undirected|directed|mixed|polar <n> <m>`` and then m edge lines.

    Edge lines are ``u v w`` for undirected and directed graphs (``w`` may be left out and
    defaults to 1), ``u v -- w`` or ``u v -> w`` for mixed graphs and ``u pu v pv w`` for polar
    graphs.
    """
    lines = _content_lines(path)
    header = next(lines, None)

    if header is None:
        raise ParseError(f'{path} is empty', 1)

    number, tokens = header
    if len(tokens) != 3 or tokens[0] not in GraphKind.list():
        raise ParseError(f'header must be "{"|".join(GraphKind.list())} <n> <m>", got {" ".join(tokens)!r}', number)

    kind = GraphKind(tokens[0])
    n, m = int(_number(tokens[1], number, int)), int(_number(tokens[2], number, int))
    if n < 0 or m < 0:
        raise ParseError('vertex and edge counts must be non-negative', number)

    plain: List[Tuple[int, int, float]] = []
    mixed: List[Tuple[int, int, float, bool]] = []
    polar: List[Tuple[int, int, int, int, float]] = []
    last = number

    for last, tokens in lines:
        if len(plain) + len(mixed) + len(polar) == m:
            raise ParseError(f'more than the {m} edges announced in the header', last)

        if kind is GraphKind.MIXED:
            if len(tokens) != 4 or tokens[2] not in _MIXED_ARROWS:
                raise ParseError('mixed edge must read "u v -- w" or "u v -> w"', last)
            mixed.append((
                _vertex(tokens[0], n, last), _vertex(tokens[1], n, last), _number(tokens[3], last),
                _MIXED_ARROWS[tokens[2]]
            ))
        elif kind is GraphKind.POLAR:
            if len(tokens) != 5:
                raise ParseError('polar edge must read "u pu v pv w"', last)
            polar.append((
                _vertex(tokens[0], n, last), _pole(tokens[1], last), _vertex(tokens[2], n, last),
                _pole(tokens[3], last), _number(tokens[4], last)
            ))
        else:
            if len(tokens) not in (2, 3):
                raise ParseError('edge must read "u v w"', last)
            w = _number(tokens[2], last) if len(tokens) == 3 else 1.0
            plain.append((_vertex(tokens[0], n, last), _vertex(tokens[1], n, last), w))

    found = len(plain) + len(mixed) + len(polar)
    if found != m:
        raise ParseError(f'header announces {m} edges, found {found}', last)

    try:
        if kind is GraphKind.MIXED:
            return MixedGraph.from_edges(n, mixed)
        if kind is GraphKind.POLAR:
            return PolarGraph.from_edges(n, polar)
        if kind is GraphKind.DIRECTED:
            return WeightedDigraph.from_edges(n, plain)
        return WeightedMultigraph.from_edges(n, plain)
    except InvalidInputError as e:
        raise ParseError(str(e)) from None


def graph_kind(g: AnyGraph) -> GraphKind:
    if isinstance(g, MixedGraph):
        return GraphKind.MIXED
    if isinstance(g, PolarGraph):
        return GraphKind.POLAR
    if isinstance(g, WeightedDigraph):
        return GraphKind.DIRECTED
    return GraphKind.UNDIRECTED


def as_simple_graph(g: AnyGraph) -> SimpleGraph:
    """Degeneracy input: an undirected graph file without loops or parallel edges, weights ignored."""
    if not isinstance(g, WeightedMultigraph):
        raise ParseError(f'degeneracy needs an undirected graph, got {graph_kind(g)}')
    try:
        return SimpleGraph(g.n, np.stack([g.tails, g.heads], axis=1))
    except InvalidInputError as e:
        raise ParseError(str(e)) from None


def _fmt(x: float) -> str:
    return repr(float(x))


def write_points(path: Path, points: Sequence[Sequence[float]] | np.ndarray) -> None:
    arr = np.asarray(points, dtype=np.float64)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(f'# {len(arr)} points\n')
        for row in arr.tolist():
            f.write(' '.join(_fmt(x) for x in row) + '\n')


def write_graph(path: Path, g: AnyGraph) -> None:
    kind = graph_kind(g)

    with open(path, 'w', encoding='utf-8') as f:
        f.write(f'{kind} {g.n} {g.m}\n')
        if isinstance(g, MixedGraph):
            for u, v, w, directed in g.edges():
                f.write(f'{u} {v} {"->" if directed else "--"} {_fmt(w)}\n')
        elif isinstance(g, PolarGraph):
            for u, pu, v, pv, w in g.edges():
                f.write(f'{u} {pu} {v} {pv} {_fmt(w)}\n')
        else:
            for u, v, w in g.edges():
                f.write(f'{u} {v} {_fmt(w)}\n')
