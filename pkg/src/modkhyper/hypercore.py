"""Uniform hypergraphs: representation, codegree queries, the binomial
random model and the plain-text file format.

Vertices are the integers ``0..n-1``.  Edges are stored as strictly
ascending tuples, deduplicated and kept in lexicographic order, so edge
indices are stable and every downstream sample is reproducible.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import ConsistencyError, ParameterError, ParseError
from .rng import stream

Edge = tuple[int, ...]


def _canonical_subset(w: Iterable[int], n: int, what: str = "subset") -> tuple[int, ...]:
    members = tuple(sorted(int(v) for v in w))
    if len(set(members)) != len(members):
        raise ParameterError(f"{what} has repeated vertices: {members}")
    if members and (members[0] < 0 or members[-1] >= n):
        raise ParameterError(f"{what} {members} not inside [0, {n})")
    return members


class Hypergraph:
    """An r-uniform hypergraph on vertices ``0..n-1``.

    Instances are immutable; all "mutating" operations return new objects.
    Duplicate edges passed to the constructor are merged (set semantics).
    """

    def __init__(self, n: int, r: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ParameterError(f"vertex count must be non-negative, got {n}")
        if r < 2:
            raise ParameterError(f"uniformity must be at least 2, got {r}")
        canon = set()
        for e in edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != r:
                raise ParameterError(f"edge {t} does not have {r} vertices")
            if len(set(t)) != r:
                raise ParameterError(f"edge {t} has repeated vertices")
            if t[0] < 0 or t[-1] >= n:
                raise ParameterError(f"edge {t} has a vertex outside [0, {n})")
            canon.add(t)
        self._n = n
        self._r = r
        self._edges: tuple[Edge, ...] = tuple(sorted(canon))

    @classmethod
    def _trusted(cls, n: int, r: int, edges: Iterable[Edge]) -> "Hypergraph":
        # edges already canonical (ascending tuples); skips validation
        h = cls.__new__(cls)
        h._n = n
        h._r = r
        h._edges = tuple(sorted(set(edges)))
        return h

    @classmethod
    def complete(cls, n: int, r: int) -> "Hypergraph":
        return cls._trusted(n, r, combinations(range(n), r))

    @property
    def n(self) -> int:
        return self._n

    @property
    def r(self) -> int:
        return self._r

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def __contains__(self, edge: Sequence[int]) -> bool:
        return tuple(sorted(edge)) in self._edge_index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self._n, self._r, self._edges) == (other._n, other._r, other._edges)

    def __hash__(self) -> int:
        return hash((self._n, self._r, self._edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self._n}, r={self._r}, edges={self.num_edges})"

    @cached_property
    def _edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self._edges)}

    def index(self, edge: Sequence[int]) -> int:
        """Position of ``edge`` in the canonical edge order."""
        try:
            return self._edge_index[tuple(sorted(edge))]
        except KeyError:
            raise ConsistencyError(f"edge {tuple(edge)} is not in the hypergraph") from None

    @cached_property
    def edge_array(self) -> np.ndarray:
        if not self._edges:
            return np.zeros((0, self._r), dtype=np.int64)
        return np.array(self._edges, dtype=np.int64)

    @cached_property
    def degrees(self) -> np.ndarray:
        """Vertex degrees as an int64 array of length n."""
        return np.bincount(self.edge_array.ravel(), minlength=self._n).astype(np.int64)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the ascending indices of the edges containing it."""
        inc: list[list[int]] = [[] for _ in range(self._n)]
        for i, e in enumerate(self._edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def edges_containing(self, w: Iterable[int]) -> list[int]:
        w = _canonical_subset(w, self._n)
        if not w:
            return list(range(self.num_edges))
        lists = sorted((self.incidence[v] for v in w), key=len)
        rest = w
        return [i for i in lists[0] if all(v in self._edges[i] for v in rest)]

    def degree(self, w: Iterable[int]) -> int:
        """Number of edges containing every vertex of ``w``."""
        w = _canonical_subset(w, self._n)
        if len(w) > self._r:
            raise ParameterError(f"|w| = {len(w)} exceeds uniformity {self._r}")
        if len(w) == 1:
            return int(self.degrees[w[0]])
        return len(self.edges_containing(w))

    def degree_into(self, w: Iterable[int], u: Iterable[int]) -> int:
        """Number of edges ``e`` with ``w`` inside ``e`` and ``e - w`` inside ``u``."""
        w = _canonical_subset(w, self._n)
        if len(w) > self._r:
            raise ParameterError(f"|w| = {len(w)} exceeds uniformity {self._r}")
        target = set(_canonical_subset(u, self._n, "u")) - set(w)
        wset = set(w)
        count = 0
        for i in self.edges_containing(w):
            if all(v in target for v in self._edges[i] if v not in wset):
                count += 1
        return count

    def codegrees(self, i: int) -> Counter:
        """Counter mapping each i-subset with positive degree to its degree."""
        if not 1 <= i <= self._r:
            raise ParameterError(f"subset size must be in [1, {self._r}], got {i}")
        counts: Counter = Counter()
        for e in self._edges:
            counts.update(combinations(e, i))
        return counts

    def min_codegree(self, i: int) -> int:
        """Minimum degree over all i-subsets of the vertex set (0 if none exist)."""
        if not 1 <= i <= self._r:
            raise ParameterError(f"subset size must be in [1, {self._r}], got {i}")
        if i == 1:
            return int(self.degrees.min()) if self._n else 0
        counts = self.codegrees(i)
        if len(counts) < comb(self._n, i):
            return 0
        return min(counts.values())

    def induced(self, s: Iterable[int]) -> tuple["Hypergraph", list[int]]:
        """Sub-hypergraph induced by ``s``, relabelled to ``0..|s|-1``.

        Returns the hypergraph and the map ``new label -> original vertex``.
        """
        s = _canonical_subset(s, self._n)
        mapping = list(s)
        if not self._edges or not s:
            return Hypergraph._trusted(len(s), self._r, ()), mapping
        relabel = np.full(self._n, -1, dtype=np.int64)
        relabel[list(s)] = np.arange(len(s))
        arr = relabel[self.edge_array]
        kept = arr[(arr >= 0).all(axis=1)]
        # relabel is monotone, so rows stay ascending and lexicographic
        return Hypergraph._trusted(len(s), self._r, map(tuple, kept.tolist())), mapping

    def remove_edges(self, es: Iterable[Sequence[int]]) -> "Hypergraph":
        drop = set()
        for e in es:
            t = tuple(sorted(e))
            if t not in self._edge_index:
                raise ConsistencyError(f"cannot remove {t}: not an edge")
            drop.add(t)
        if not drop:
            return self
        return Hypergraph._trusted(self._n, self._r, (e for e in self._edges if e not in drop))

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Image of the hypergraph under the vertex bijection ``v -> perm[v]``."""
        if sorted(perm) != list(range(self._n)):
            raise ParameterError("relabel needs a permutation of the vertex set")
        return Hypergraph._trusted(
            self._n, self._r, (tuple(sorted(perm[v] for v in e)) for e in self._edges)
        )


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the binomial random hypergraph model."""

    n: int
    r: int
    p: float
    seed: int = 0

    def validate(self) -> None:
        if not 2 <= self.r <= self.n:
            raise ParameterError(f"need 2 <= r <= n, got r={self.r}, n={self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"edge probability must lie in [0, 1], got {self.p}")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must be an unsigned 64-bit integer")


def generate(params: ModelParams) -> Hypergraph:
    """Sample from the binomial model: each r-subset is an edge independently
    with probability p.

    Candidate r-subsets are visited in lexicographic order and each consumes
    exactly one uniform draw, so the output depends only on ``params``.
    """
    params.validate()
    n, r, p = params.n, params.r, params.p
    total = comb(n, r)
    draws = stream(params.seed, "generate").random(total)
    keep = draws < p
    chosen = (c for c, k in zip(combinations(range(n), r), keep.tolist()) if k)
    return Hypergraph._trusted(n, r, chosen)


def read_hypergraph(text: str) -> Hypergraph:
    """Parse the ``n r m`` text format (see ``write_hypergraph``)."""
    header = None
    edges: set[Edge] = set()
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last = lineno
        fields = line.split()
        if header is None:
            try:
                n, r, m = (int(x) for x in fields)
            except ValueError:
                raise ParseError("malformed header, expected 'n r m'", lineno) from None
            if n < 0 or r < 2 or m < 0:
                raise ParseError("malformed header, need n >= 0, r >= 2, m >= 0", lineno)
            header = (n, r, m)
            continue
        n, r, m = header
        if len(fields) != r:
            raise ParseError(f"wrong arity: expected {r} vertices, got {len(fields)}", lineno)
        try:
            verts = [int(x) for x in fields]
        except ValueError:
            raise ParseError("malformed edge, expected integers", lineno) from None
        if any(v < 0 or v >= n for v in verts):
            raise ParseError("vertex out of range", lineno)
        edge = tuple(sorted(verts))
        if len(set(edge)) != r:
            raise ParseError("repeated vertex in edge", lineno)
        if edge in edges:
            raise ParseError("duplicate edge", lineno)
        edges.add(edge)
    if header is None:
        raise ParseError("malformed header, file is empty", 1)
    n, r, m = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges but {len(edges)} were read", last)
    return Hypergraph._trusted(n, r, edges)


def write_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.r} {h.num_edges}"]
    lines.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def load_hypergraph(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return read_hypergraph(fh.read())


def save_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_hypergraph(h))
