"""Perfect matchings and k-factors in uniform hypergraphs.

A perfect matching is found by splitting the vertex set into r equal
parts, labelling the first r-1 parts by random bijections from
``range(m // r)``, and matching the labels against the last part in an
auxiliary bipartite graph: label ``i`` is adjacent to ``v`` when the
r-set ``{perm_1[i], ..., perm_{r-1}[i], v}`` is an edge.  A perfect
matching of that graph lifts to a perfect matching of the hypergraph.
A k-factor is k edge-disjoint perfect matchings, peeled off one by one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .bmatch import BipartiteGraph, HallViolator, Matching, perfect_matching_or_violator
from .errors import ConstructionError, ParameterError
from .hypercore import Edge, Hypergraph
from .rng import derive_seed, stream


@dataclass
class FactorConfig:
    """Retry budgets and the density margin for the matching pipeline.

    ``eta`` and ``gamma`` do not drive any step; ``eta`` only enters the
    warning threshold on k (see ``find_k_factor``).
    """

    epsilon: float | str = "auto"
    eta: float = 0.5
    gamma: float = 0.5
    max_partition_resamples: int = 5
    max_perm_resamples: int = 20
    max_matching_retries: int = 3
    small_fallback_limit: int = 24
    quality_max_r: int | None = 4
    fallback_node_budget: int = 5_000_000

    def __post_init__(self):
        if self.epsilon != "auto":
            if isinstance(self.epsilon, str) or not 0.0 < float(self.epsilon) < 1.0:
                raise ParameterError(f"epsilon must be 'auto' or lie in (0, 1), got {self.epsilon!r}")
        for name in ("max_partition_resamples", "max_perm_resamples", "max_matching_retries"):
            if getattr(self, name) < 1:
                raise ParameterError(f"{name} must be at least 1")
        if self.small_fallback_limit < 0:
            raise ParameterError("small_fallback_limit must be non-negative")


@dataclass(frozen=True)
class BalancedPartition:
    parts: tuple[tuple[int, ...], ...]
    quality: float
    threshold: float | None = None
    degraded: bool = False
    resamples: int = 1


@dataclass(frozen=True)
class PermutationFamily:
    """``perms[i][j]`` is the vertex of part ``i`` carrying label ``j``."""

    perms: tuple[tuple[int, ...], ...]


@dataclass
class MatchingResult:
    edges: list[Edge]
    method: str
    partition_resamples: int = 0
    perm_resamples: int = 0
    degraded: bool = False


@dataclass
class Factor:
    k: int
    matchings: list[list[Edge]]
    seed: int = 0
    retries: dict[str, int] = field(default_factory=dict)
    degraded: bool = False
    flags: list[str] = field(default_factory=list)
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def edges(self) -> list[Edge]:
        return [e for m in self.matchings for e in m]

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "matchings": [[list(e) for e in m] for m in self.matchings],
            "seed": self.seed,
            "retries": dict(self.retries),
            "degraded": self.degraded,
            "flags": list(self.flags),
            "diagnostics": dict(self.diagnostics),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Factor":
        return cls(
            k=int(data["k"]),
            matchings=[[tuple(sorted(e)) for e in m] for m in data["matchings"]],
            seed=int(data.get("seed", 0)),
            retries=dict(data.get("retries", {})),
            degraded=bool(data.get("degraded", False)),
            flags=list(data.get("flags", [])),
            diagnostics=dict(data.get("diagnostics", {})),
        )


@dataclass(frozen=True)
class Check:
    """Verifier outcome; truthy iff the object passed."""

    ok: bool
    message: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def effective_epsilon(h: Hypergraph) -> float | None:
    """Measured density margin ``delta_{r-1}(h) / (p_hat * m) - 1/2``.

    ``p_hat`` is the edge density ``|E| / C(m, r)``.  None when undefined
    (no edges).
    """
    m, r = h.n, h.r
    if m < r or h.num_edges == 0:
        return None
    p_hat = h.num_edges / math.comb(m, r)
    return h.min_codegree(r - 1) / (p_hat * m) - 0.5


def _resolve_epsilon(h: Hypergraph, cfg: FactorConfig) -> float | None:
    if cfg.epsilon == "auto":
        return effective_epsilon(h)
    return float(cfg.epsilon)


def partition_quality(h: Hypergraph, parts: Sequence[Sequence[int]]) -> float:
    """min over (r-1)-sets W of positive degree and parts V_i of
    ``deg(W, V_i) * r / deg(W)``; ``inf`` when there is no such W."""
    arr = h.edge_array
    r, n = h.r, h.n
    if len(arr) == 0:
        return math.inf
    label = np.empty(n, dtype=np.int64)
    for idx, part in enumerate(parts):
        label[list(part)] = idx
    keys, labels = [], []
    for j in range(r):
        key = np.zeros(len(arr), dtype=np.int64)
        for c in range(r):
            if c != j:
                key = key * n + arr[:, c]
        keys.append(key)
        labels.append(label[arr[:, j]])
    uniq, inv = np.unique(np.concatenate(keys), return_inverse=True)
    lab = np.concatenate(labels)
    deg = np.bincount(inv, minlength=len(uniq))
    into = np.bincount(inv * r + lab, minlength=len(uniq) * r).reshape(len(uniq), r)
    return float((into * r / deg[:, None]).min())


def _quality_enabled(h: Hypergraph, cfg: FactorConfig) -> bool:
    if cfg.quality_max_r is not None and h.r > cfg.quality_max_r:
        return False
    return max(h.n, 1) ** (h.r - 1) < 2**62


def balanced_partition(
    h: Hypergraph, seed: int, cfg: FactorConfig | None = None, epsilon: float | None = None
) -> BalancedPartition:
    """Uniformly random split of the vertices into r parts of size m/r.

    Resamples (up to ``cfg.max_partition_resamples`` draws) until every
    positive-degree (r-1)-set W has at least ``(1 - a0) deg(W) / r`` of its
    edges completed inside each part, with ``a0 = eps / (1 + 2 eps)``.  If
    no draw passes, the best draw is returned with ``degraded=True``.
    """
    cfg = cfg or FactorConfig()
    m, r = h.n, h.r
    if m % r:
        raise ParameterError(f"vertex count {m} is not divisible by r={r}")
    if epsilon is None and cfg.epsilon != "auto":
        epsilon = float(cfg.epsilon)
    threshold = None
    if epsilon is not None and epsilon > 0:
        threshold = 1.0 - epsilon / (1.0 + 2.0 * epsilon)
    check = _quality_enabled(h, cfg)
    size = m // r
    best: BalancedPartition | None = None
    for attempt in range(cfg.max_partition_resamples):
        order = stream(seed, "partition", attempt).permutation(m)
        parts = tuple(tuple(sorted(order[i * size:(i + 1) * size].tolist())) for i in range(r))
        if not check:
            return BalancedPartition(parts, math.nan, threshold, False, attempt + 1)
        quality = partition_quality(h, parts)
        met = quality == math.inf or (threshold is not None and quality >= threshold)
        if met:
            return BalancedPartition(parts, quality, threshold, False, attempt + 1)
        if best is None or quality > best.quality:
            best = BalancedPartition(parts, quality, threshold, True, attempt + 1)
    assert best is not None
    return BalancedPartition(best.parts, best.quality, threshold, True, cfg.max_partition_resamples)


def random_permutations(partition: BalancedPartition, rng: np.random.Generator) -> PermutationFamily:
    parts = partition.parts
    return PermutationFamily(
        tuple(tuple(int(v) for v in rng.permutation(np.array(part, dtype=np.int64))) for part in parts[:-1])
    )


def _check_family(h: Hypergraph, partition: BalancedPartition, perms: PermutationFamily) -> None:
    r = h.r
    if len(partition.parts) != r or len(perms.perms) != r - 1:
        raise ParameterError("partition needs r parts and r-1 permutations")
    for part, perm in zip(partition.parts, perms.perms):
        if sorted(perm) != sorted(part):
            raise ParameterError("permutation is not a bijection onto its part")


def build_auxiliary(h: Hypergraph, partition: BalancedPartition, perms: PermutationFamily) -> BipartiteGraph:
    """Bipartite graph on labels ``range(m // r)`` and the last part.

    B-vertex ``j`` stands for ``partition.parts[-1][j]``.
    """
    _check_family(h, partition, perms)
    last = partition.parts[-1]
    position = {v: j for j, v in enumerate(last)}
    edges = h.edges
    inc = h.incidence
    rows = []
    for i in range(len(last)):
        w = [perm[i] for perm in perms.perms]
        anchor = min(w, key=lambda v: len(inc[v]))
        row = []
        for eid in inc[anchor]:
            e = edges[eid]
            rest = [v for v in e if v not in w]
            if len(rest) == 1 and rest[0] in position:
                row.append(position[rest[0]])
        rows.append(tuple(row))
    return BipartiteGraph(len(last), len(last), tuple(rows))


def lift_matching(partition: BalancedPartition, perms: PermutationFamily, matching: Matching) -> list[Edge]:
    last = partition.parts[-1]
    lifted = [tuple(sorted([perm[i] for perm in perms.perms] + [last[j]])) for i, j in matching.pairs]
    return sorted(lifted)


def exact_perfect_matching(
    h: Hypergraph, rng: np.random.Generator | None = None, node_budget: int | None = None
) -> list[Edge] | None:
    """Exhaustive search over bitmasks of covered vertices.

    Branches on the lowest uncovered vertex; failed masks are memoised.
    ``rng`` shuffles the branching order (for diversity across retries).
    Raises ``ConstructionError`` if ``node_budget`` runs out.
    """
    m, r = h.n, h.r
    if m % r:
        return None
    if m == 0:
        return []
    masks = [sum(1 << v for v in e) for e in h.edges]
    inc = [list(x) for x in h.incidence]
    if rng is not None:
        for lst in inc:
            rng.shuffle(lst)
    full = (1 << m) - 1
    failed: set[int] = set()
    nodes = 0
    chosen: list[int] = []

    def search(covered: int) -> bool:
        nonlocal nodes
        if covered == full:
            return True
        if covered in failed:
            return False
        v = ((~covered) & (covered + 1)).bit_length() - 1
        for eid in inc[v]:
            mask = masks[eid]
            if mask & covered:
                continue
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                raise ConstructionError("exact_matching", "node budget exhausted", {"nodes": nodes})
            chosen.append(eid)
            if search(covered | mask):
                return True
            chosen.pop()
        failed.add(covered)
        return False

    if not search(0):
        return None
    return sorted(h.edges[eid] for eid in chosen)


def find_perfect_matching(
    h: Hypergraph, seed: int, cfg: FactorConfig | None = None
) -> MatchingResult:
    """Find a perfect matching of ``h`` through the auxiliary bipartite graph.

    Permutations are resampled before partitions.  When every attempt hits
    a Hall violation and ``h.n <= cfg.small_fallback_limit``, an exact
    search decides the question.  Raises ``ConstructionError`` (stage
    ``perfect_matching``) carrying the last Hall violator on failure.
    """
    cfg = cfg or FactorConfig()
    m, r = h.n, h.r
    if m % r:
        raise ParameterError(f"vertex count {m} is not divisible by r={r}")
    if m == 0:
        return MatchingResult([], "trivial")
    isolated = np.flatnonzero(h.degrees == 0)
    if len(isolated):
        raise ConstructionError(
            "perfect_matching", f"vertex {int(isolated[0])} lies in no edge",
            {"isolated_vertex": int(isolated[0]), "violator": None},
        )
    epsilon = _resolve_epsilon(h, cfg)
    last_violator: HallViolator | None = None
    degraded = False
    for pa in range(cfg.max_partition_resamples):
        partition = balanced_partition(h, derive_seed(seed, "pm-partition", pa), cfg, epsilon)
        degraded = degraded or partition.degraded
        for pe in range(cfg.max_perm_resamples):
            perms = random_permutations(partition, stream(seed, "pm-perms", pa, pe))
            outcome = perfect_matching_or_violator(build_auxiliary(h, partition, perms))
            if isinstance(outcome, Matching):
                return MatchingResult(lift_matching(partition, perms, outcome), "auxiliary", pa, pe, partition.degraded)
            last_violator = outcome
    report: dict[str, Any] = {
        "violator": None if last_violator is None else {
            "side": last_violator.side,
            "members": list(last_violator.members),
            "neighborhood_size": last_violator.neighborhood_size,
        },
        "exact_search": False,
    }
    if m <= cfg.small_fallback_limit:
        report["exact_search"] = True
        found = exact_perfect_matching(h, stream(seed, "pm-exact"), cfg.fallback_node_budget)
        if found is not None:
            return MatchingResult(found, "exact", cfg.max_partition_resamples, cfg.max_perm_resamples, degraded)
        report["exact_result"] = "none exists"
    raise ConstructionError("perfect_matching", "no perfect matching found", report)


def find_k_factor(h: Hypergraph, k: int, seed: int, cfg: FactorConfig | None = None) -> Factor:
    """k edge-disjoint perfect matchings, found one at a time.

    Each matching is searched for in what remains of ``h`` after removing
    the previous ones.  If step j fails the whole sequence restarts with
    fresh randomness, up to ``cfg.max_matching_retries`` times; the final
    ``ConstructionError`` reports how many matchings were found.

    Flags: ``density_margin_nonpositive`` when the measured margin is not
    positive, ``k_above_budget`` when ``k > eps (1 - eta) m p_hat``.
    """
    cfg = cfg or FactorConfig()
    m, r = h.n, h.r
    if k < 0:
        raise ParameterError(f"k must be non-negative, got {k}")
    if m % r:
        raise ParameterError(f"vertex count {m} is not divisible by r={r}")
    if k == 0:
        return Factor(0, [], seed)

    flags: list[str] = []
    diagnostics: dict[str, Any] = {}
    eps = _resolve_epsilon(h, cfg)
    p_hat = h.num_edges / math.comb(m, r) if m >= r else 0.0
    diagnostics["epsilon"] = eps
    diagnostics["p_hat"] = p_hat
    if m > 1:
        diagnostics["p_n_over_log_n"] = p_hat * m / math.log(m)
    if eps is None or eps <= 0:
        flags.append("density_margin_nonpositive")
    elif k > eps * (1 - cfg.eta) * m * p_hat:
        flags.append("k_above_budget")

    best_progress = 0
    last: ConstructionError | None = None
    for attempt in range(cfg.max_matching_retries):
        current = h
        found: list[list[Edge]] = []
        degraded = False
        exact_steps = 0
        try:
            for j in range(k):
                res = find_perfect_matching(current, derive_seed(seed, "factor", attempt, j), cfg)
                found.append(res.edges)
                degraded = degraded or res.degraded
                exact_steps += res.method == "exact"
                current = current.remove_edges(res.edges)
        except ConstructionError as exc:
            best_progress = max(best_progress, len(found))
            last = exc
            continue
        retries = {"attempts": attempt + 1, "exact_steps": exact_steps}
        return Factor(k, found, seed, retries, degraded, flags, diagnostics)
    assert last is not None
    raise ConstructionError(
        "k_factor",
        f"found only {best_progress} of {k} disjoint perfect matchings",
        {"progress": best_progress, "k": k, "last": last.report, "flags": flags},
    )


def verify_factor(h: Hypergraph, f: Factor) -> Check:
    """Check that ``f`` is a k-factor of ``h`` made of disjoint perfect matchings."""
    if len(f.matchings) != f.k:
        return Check(False, f"expected {f.k} matchings, got {len(f.matchings)}")
    seen: set[Edge] = set()
    for j, matching in enumerate(f.matchings):
        for e in matching:
            e = tuple(sorted(e))
            if e not in h:
                return Check(False, f"edge {e} of matching {j} not in hypergraph")
            if e in seen:
                return Check(False, f"matchings not disjoint: edge {e} repeated")
            seen.add(e)
    deg = np.zeros(h.n, dtype=np.int64)
    for e in seen:
        deg[list(e)] += 1
    if f.k > 0:
        missing = np.flatnonzero(deg == 0)
        if len(missing):
            return Check(False, f"not spanning: vertex {int(missing[0])} uncovered")
    for j, matching in enumerate(f.matchings):
        covered = [v for e in matching for v in e]
        if len(covered) != len(set(covered)) or len(covered) != h.n:
            return Check(False, f"matching {j} is not a perfect matching")
    bad = np.flatnonzero(deg != f.k)
    if len(bad):
        v = int(bad[0])
        return Check(False, f"vertex {v} has degree {int(deg[v])}, expected {f.k}")
    return Check(True)
