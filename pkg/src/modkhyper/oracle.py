"""Exhaustive reference implementations used to check the constructive code.

Everything here is deliberately simple and independent of the pipelines
it checks: the mod-k chromatic index by backtracking, perfect matchings
by plain search, bipartite matchings by enumeration, and the residue
distribution of a binomial variable by dynamic programming.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .bmatch import BipartiteGraph
from .errors import BudgetError, ParameterError
from .hypercore import Edge, Hypergraph


@dataclass
class ChiResult:
    """Exact mod-k chromatic index with an optimal witness.

    ``value`` is None when the node budget ran out before the search
    finished (``budget_exceeded`` is then True).
    """

    value: int | None
    witness: list[list[int]] = field(default_factory=list)
    nodes_explored: int = 0
    budget_exceeded: bool = False


def _has_k_witness(h: Hypergraph, k: int) -> bool:
    deg = h.degrees
    return bool(((deg > 0) & (deg % k == 0)).any())


def chi_exact(h: Hypergraph, k: int, max_edges: int = 12, node_budget: int = 10**8) -> ChiResult:
    """Minimum number of 1_k classes partitioning the edges of ``h``.

    Backtracks over edges in canonical order.  Edge j may only open class c
    if classes below c are already non-empty, and a branch is cut as soon as
    some vertex cannot reach residue 1 in all its non-empty classes with the
    edges it has left.  Class counts are tried in increasing order starting
    from the lower bound k when a vertex of positive degree divisible by k
    exists.
    """
    if k < 2:
        raise ParameterError(f"k must be at least 2, got {k}")
    E = h.num_edges
    if E > max_edges:
        raise BudgetError(f"{E} edges exceed the exact-search limit of {max_edges}")
    if E == 0:
        return ChiResult(0, [], 0)
    edges = h.edges
    start = k if _has_k_witness(h, k) else 1
    nodes = 0

    for t in range(start, E + 1):
        counts = [[0] * h.n for _ in range(t)]
        rem = h.degrees.tolist()
        assign = [-1] * E

        def need(x: int) -> int:
            return 0 if x == 0 else (1 - x) % k

        def feasible(e: Edge) -> bool:
            for v in e:
                if sum(need(counts[c][v]) for c in range(t)) > rem[v]:
                    return False
            return True

        def search(j: int, used: int) -> bool:
            nonlocal nodes
            if j == E:
                return True
            e = edges[j]
            for v in e:
                rem[v] -= 1
            for c in range(min(used + 1, t)):
                nodes += 1
                if nodes > node_budget:
                    raise _OutOfBudget
                for v in e:
                    counts[c][v] += 1
                if feasible(e):
                    assign[j] = c
                    if search(j + 1, max(used, c + 1)):
                        return True
                for v in e:
                    counts[c][v] -= 1
            for v in e:
                rem[v] += 1
            return False

        try:
            ok = search(0, 0)
        except _OutOfBudget:
            return ChiResult(None, [], nodes, True)
        if ok:
            classes: list[list[int]] = [[] for _ in range(t)]
            for j, c in enumerate(assign):
                classes[c].append(j)
            return ChiResult(t, classes, nodes)
    raise AssertionError("single-edge classes always give a valid partition")


class _OutOfBudget(Exception):
    pass


def hypergraph_pm_exact(h: Hypergraph, max_vertices: int = 24, max_edges: int = 64) -> list[Edge] | None:
    """A perfect matching of ``h`` or None, by exhaustive search.

    Always branches on the smallest uncovered vertex; dead sets of
    uncovered vertices are remembered.
    """
    if h.n > max_vertices and h.num_edges > max_edges:
        raise BudgetError(f"instance too large for exhaustive matching search (n={h.n})")
    if h.n % h.r:
        return None
    by_vertex: dict[int, list[frozenset[int]]] = {v: [] for v in range(h.n)}
    for e in h.edges:
        fe = frozenset(e)
        for v in e:
            by_vertex[v].append(fe)
    dead: set[frozenset[int]] = set()

    def solve(uncovered: frozenset[int]) -> list[frozenset[int]] | None:
        if not uncovered:
            return []
        if uncovered in dead:
            return None
        v = min(uncovered)
        for e in by_vertex[v]:
            if e <= uncovered:
                rest = solve(uncovered - e)
                if rest is not None:
                    return [e] + rest
        dead.add(uncovered)
        return None

    found = solve(frozenset(range(h.n)))
    if found is None:
        return None
    return sorted(tuple(sorted(e)) for e in found)


def bipartite_max_matching_brute(g: BipartiteGraph) -> int:
    """Largest matching size by trying every choice for every A-vertex."""
    best = 0

    def go(a: int, used: int, size: int) -> None:
        nonlocal best
        if size + (g.a_size - a) <= best:
            return
        if a == g.a_size:
            best = size
            return
        for b in g.adjacency[a]:
            if not used >> b & 1:
                go(a + 1, used | 1 << b, size + 1)
        go(a + 1, used, size)

    go(0, 0, 0)
    return best


def count_perfect_matchings(g: BipartiteGraph) -> int:
    """Permanent of the biadjacency matrix, by DP over subsets of B."""
    if g.a_size != g.b_size:
        return 0
    ways = {0: 1}
    for a in range(g.a_size):
        nxt: dict[int, int] = {}
        for used, w in ways.items():
            for b in g.adjacency[a]:
                if not used >> b & 1:
                    key = used | 1 << b
                    nxt[key] = nxt.get(key, 0) + w
        ways = nxt
    return sum(ways.values())


@dataclass(frozen=True)
class ResidueDistribution:
    """Distribution of ``X mod k``; ``deviations[t] = P(X = t mod k) - 1/k``."""

    k: int
    probs: tuple[float, ...]
    deviations: tuple[float, ...]

    @property
    def max_deviation(self) -> float:
        return max(abs(d) for d in self.deviations)


def binomial_mod_k(n: int, p: float, k: int) -> ResidueDistribution:
    """Exact residue distribution of Bin(n, p) modulo k in O(n k).

    The DP runs on the deviations from the uniform distribution rather than
    on the probabilities: the uniform vector is a fixed point of the step
    ``P[t] <- (1-p) P[t] + p P[t-1]``, so the deviations obey the same
    recurrence and stay accurate relative to their own (tiny) size instead
    of being swamped by 1/k.
    """
    if n < 0 or k < 2 or not 0.0 <= p <= 1.0:
        raise ParameterError(f"need n >= 0, k >= 2, 0 <= p <= 1; got n={n}, k={k}, p={p}")
    dev = np.full(k, -1.0 / k)
    dev[0] = (k - 1) / k
    q = 1.0 - p
    for _ in range(n):
        dev = q * dev + p * np.roll(dev, 1)
        # deviations sum to zero; drop the rounding drift along the all-ones
        # direction, which the recurrence would otherwise never damp
        dev -= dev.mean()
    probs = tuple(float(x) for x in 1.0 / k + dev)
    return ResidueDistribution(k, probs, tuple(float(x) for x in dev))


def binomial_mod_k_fourier(n: int, p: float, k: int) -> list[float]:
    """Closed form ``P(t) = (1/k) sum_j w^(-tj) (1 - p + p w^j)^n``, w = e^(2 pi i/k)."""
    w = [cmath.exp(2j * math.pi * j / k) for j in range(k)]
    out = []
    for t in range(k):
        s = sum(w[j] ** (-t) * (1 - p + p * w[j]) ** n for j in range(k))
        out.append((s / k).real)
    return out


def binomial_mod_k_enumerate(n: int, p, k: int) -> list:
    """Direct summation of binomial terms; works with ``Fraction`` for p."""
    out = [0 * p for _ in range(k)]
    for x in range(n + 1):
        out[x % k] += math.comb(n, x) * p**x * (1 - p) ** (n - x)
    return out


def is_one_k(edges: list[Edge], k: int) -> bool:
    deg: dict[int, int] = {}
    for e in edges:
        for v in e:
            deg[v] = deg.get(v, 0) + 1
    return all(d % k == 1 for d in deg.values())


def chi_brute(h: Hypergraph, k: int) -> int:
    """Mod-k chromatic index by enumerating every labelling (tiny inputs only)."""
    E = h.num_edges
    if E == 0:
        return 0
    if E > 8:
        raise BudgetError("chi_brute is limited to 8 edges")
    for t in range(1, E + 1):
        for labels in _labelings(E, t):
            groups = [[h.edges[j] for j in range(E) if labels[j] == c] for c in range(t)]
            if all(is_one_k(g, k) for g in groups):
                return t
    raise AssertionError("unreachable")


def _labelings(E: int, t: int):
    # all maps range(E) -> range(t), no symmetry breaking on purpose
    if E == 0:
        yield ()
        return
    for rest in _labelings(E - 1, t):
        for c in range(t):
            yield rest + (c,)

