from __future__ import annotations

from typing import Iterable, Iterator, List, Tuple

__all__ = [
    'find_bridges'
]


def find_bridges(n: int, edges: Iterable[Tuple[int, int, int]]) -> List[int]:
    """
    Ids of the bridges among ``(edge id, u, v)`` triples, by one iterative DFS.

    Parallel edges and self-loops are never bridges; the parent is skipped by edge id, not by vertex.
    """
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for e, u, v in edges:
        if u != v:
            adj[u].append((v, e))
            adj[v].append((u, e))

    disc = [-1] * n
    low = [0] * n
    timer = 0
    bridges: List[int] = []

    for root in range(n):
        if disc[root] != -1 or not adj[root]:
            continue

        disc[root] = low[root] = timer
        timer += 1
        stack: List[Tuple[int, int, Iterator[Tuple[int, int]]]] = [(root, -1, iter(adj[root]))]

        while stack:
            x, via, it = stack[-1]
            for y, e in it:
                if e == via:
                    continue
                if disc[y] == -1:
                    disc[y] = low[y] = timer
                    timer += 1
                    stack.append((y, e, iter(adj[y])))
                    break
                if disc[y] < low[x]:
                    low[x] = disc[y]
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    if low[x] < low[parent]:
                        low[parent] = low[x]
                    if low[x] > disc[parent]:
                        bridges.append(via)

    return bridges
