"""Bipartite graphs, Hopcroft-Karp maximum matching and Hall witnesses."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import ParameterError

_INF = float("inf")


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with sides ``A = range(a_size)`` and ``B = range(b_size)``.

    ``adjacency[a]`` is the ascending, duplicate-free tuple of B-neighbours
    of ``a``.
    """

    a_size: int
    b_size: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.a_size < 0 or self.b_size < 0:
            raise ParameterError("side sizes must be non-negative")
        if len(self.adjacency) != self.a_size:
            raise ParameterError("adjacency needs one list per A-vertex")
        adj = []
        for nbrs in self.adjacency:
            row = tuple(sorted(set(int(b) for b in nbrs)))
            if row and (row[0] < 0 or row[-1] >= self.b_size):
                raise ParameterError(f"neighbour outside [0, {self.b_size})")
            adj.append(row)
        object.__setattr__(self, "adjacency", tuple(adj))

    @classmethod
    def from_edges(cls, a_size: int, b_size: int, pairs: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        rows: list[list[int]] = [[] for _ in range(a_size)]
        for a, b in pairs:
            if not 0 <= a < a_size:
                raise ParameterError(f"A-vertex {a} outside [0, {a_size})")
            rows[a].append(b)
        return cls(a_size, b_size, tuple(tuple(r) for r in rows))

    @classmethod
    def complete(cls, a_size: int, b_size: int) -> "BipartiteGraph":
        row = tuple(range(b_size))
        return cls(a_size, b_size, tuple(row for _ in range(a_size)))

    @property
    def num_edges(self) -> int:
        return sum(len(row) for row in self.adjacency)

    def b_adjacency(self) -> tuple[tuple[int, ...], ...]:
        rows: list[list[int]] = [[] for _ in range(self.b_size)]
        for a, nbrs in enumerate(self.adjacency):
            for b in nbrs:
                rows[b].append(a)
        return tuple(tuple(r) for r in rows)

    def neighbourhood(self, side: str, members: Iterable[int]) -> set[int]:
        adj = self.adjacency if side == "A" else self.b_adjacency()
        out: set[int] = set()
        for x in members:
            out.update(adj[x])
        return out

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def is_valid(self, g: BipartiteGraph) -> bool:
        a_seen = {a for a, _ in self.pairs}
        b_seen = {b for _, b in self.pairs}
        if len(a_seen) != len(self.pairs) or len(b_seen) != len(self.pairs):
            return False
        return all(0 <= a < g.a_size and g.has_edge(a, b) for a, b in self.pairs)

    def is_perfect(self, g: BipartiteGraph) -> bool:
        return g.a_size == g.b_size == len(self.pairs) and self.is_valid(g)


@dataclass(frozen=True)
class HallViolator:
    """A set X on one side with |N(X)| < |X|: no perfect matching exists."""

    side: str
    members: tuple[int, ...]
    neighborhood_size: int

    def check(self, g: BipartiteGraph) -> bool:
        """Re-derive |N(X)| from the graph and confirm the violation."""
        if not self.members:
            return False
        size = len(g.neighbourhood(self.side, self.members))
        return size == self.neighborhood_size and size < len(self.members)


def _hopcroft_karp(g: BipartiteGraph) -> tuple[list[int], list[int]]:
    adj = g.adjacency
    match_a = [-1] * g.a_size
    match_b = [-1] * g.b_size
    while True:
        # BFS layering from the free A-vertices
        dist = [_INF] * g.a_size
        queue = deque()
        for a in range(g.a_size):
            if match_a[a] == -1:
                dist[a] = 0
                queue.append(a)
        limit = _INF
        while queue:
            a = queue.popleft()
            if dist[a] >= limit:
                continue
            for b in adj[a]:
                a2 = match_b[b]
                if a2 == -1:
                    if limit == _INF:
                        limit = dist[a] + 1
                elif dist[a2] == _INF:
                    dist[a2] = dist[a] + 1
                    queue.append(a2)
        if limit == _INF:
            return match_a, match_b

        # iterative layered DFS, one root at a time in ascending order
        for root in range(g.a_size):
            if match_a[root] != -1:
                continue
            stack_a = [root]
            stack_b: list[int] = []
            cursor = [0]
            while stack_a:
                a = stack_a[-1]
                nbrs = adj[a]
                if cursor[-1] >= len(nbrs):
                    dist[a] = _INF
                    stack_a.pop()
                    cursor.pop()
                    if stack_b:
                        stack_b.pop()
                    continue
                b = nbrs[cursor[-1]]
                cursor[-1] += 1
                a2 = match_b[b]
                if a2 == -1:
                    if dist[a] + 1 == limit:
                        stack_b.append(b)
                        for x, y in zip(stack_a, stack_b):
                            match_a[x] = y
                            match_b[y] = x
                        break
                elif dist[a2] == dist[a] + 1:
                    stack_b.append(b)
                    stack_a.append(a2)
                    cursor.append(0)


def max_matching(g: BipartiteGraph) -> Matching:
    """Maximum-cardinality matching by Hopcroft-Karp, O(E sqrt(V)).

    Neighbours and roots are scanned in ascending order, so the result is a
    deterministic function of the graph.
    """
    match_a, _ = _hopcroft_karp(g)
    return Matching(tuple((a, b) for a, b in enumerate(match_a) if b != -1))


def _alternating_reach(g: BipartiteGraph, match_a: list[int], match_b: list[int]):
    seen_a = [a for a in range(g.a_size) if match_a[a] == -1]
    in_a = set(seen_a)
    seen_b: set[int] = set()
    queue = deque(seen_a)
    while queue:
        a = queue.popleft()
        for b in g.adjacency[a]:
            if b in seen_b:
                continue
            seen_b.add(b)
            a2 = match_b[b]
            if a2 != -1 and a2 not in in_a:
                in_a.add(a2)
                queue.append(a2)
    return in_a, seen_b


def perfect_matching_or_violator(g: BipartiteGraph) -> Union[Matching, HallViolator]:
    """Return a perfect matching, or a Hall violator on side A.

    The violator is the set of A-vertices reachable by alternating paths
    from the unmatched A-vertices of a maximum matching; its neighbourhood
    consists of matched B-vertices only, hence is strictly smaller.
    """
    if g.a_size != g.b_size:
        raise ParameterError(f"sides differ in size: {g.a_size} != {g.b_size}")
    match_a, match_b = _hopcroft_karp(g)
    if all(b != -1 for b in match_a):
        return Matching(tuple(enumerate(match_a)))
    members, nbrs = _alternating_reach(g, match_a, match_b)
    return HallViolator("A", tuple(sorted(members)), len(nbrs))


def min_vertex_cover(g: BipartiteGraph) -> tuple[set[int], set[int]]:
    """König cover ``(A - Z, B & Z)`` from the same alternating reachability."""
    match_a, match_b = _hopcroft_karp(g)
    reach_a, reach_b = _alternating_reach(g, match_a, match_b)
    return set(range(g.a_size)) - reach_a, reach_b
