"""Simple undirected graphs on vertices 0..n-1 and their coconnected components.

Two independent routes to the coconnected components are kept on purpose:
union-find over complement edges and breadth-first search on the complement.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


def normalize_edges(edges: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    return frozenset((min(a, b), max(a, b)) for a, b in edges if a != b)


def _sorted_blocks(blocks: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    return sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])


def coconnected_components_uf(n: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    """Connected components of the complement graph, via union-find."""
    e = normalize_edges(edges)
    uf = UnionFind(n)
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in e:
                uf.union(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(uf.find(v), []).append(v)
    return _sorted_blocks(groups.values())


def coconnected_components_bfs(n: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    """Connected components of the complement graph, via BFS over non-neighbours."""
    adj = [set() for _ in range(n)]
    for a, b in normalize_edges(edges):
        adj[a].add(b)
        adj[b].add(a)
    unseen = set(range(n))
    blocks = []
    while unseen:
        start = min(unseen)
        unseen.discard(start)
        queue, block = deque([start]), [start]
        while queue:
            v = queue.popleft()
            nxt = [u for u in unseen if u not in adj[v]]
            for u in nxt:
                unseen.discard(u)
                block.append(u)
                queue.append(u)
        blocks.append(block)
    return _sorted_blocks(blocks)


def connected_components(n: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    uf = UnionFind(n)
    for a, b in normalize_edges(edges):
        uf.union(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(uf.find(v), []).append(v)
    return _sorted_blocks(groups.values())
