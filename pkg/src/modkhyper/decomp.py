"""Mod-k edge decompositions of uniform hypergraphs.

A 1_k-hypergraph is one in which every vertex has degree 0 or degree
congruent to 1 modulo k.  ``decompose`` partitions the edges of an
r-uniform hypergraph into 1_k colour classes:

* when the number of non-isolated vertices n is divisible by
  ``d = gcd(k, r)``, into exactly k classes (``decompose_case1``);
* otherwise into at most ``k + r + 1`` classes (``decompose_case2``).

Residues are indexed ``0..k-1`` internally.  The construction talks about
degree classes indexed by ``i in 1..k``; class i is residue ``i % k`` (so
class k is residue 0).  Output colour classes are listed in construction
order, and empty ones are kept so the count matches the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable

import numpy as np

from .errors import ConsistencyError, ConstructionError, ParameterError
from .factor import Check, FactorConfig, find_k_factor
from .hypercore import Edge, Hypergraph
from .oracle import chi_exact
from .rng import derive_seed, stream


@dataclass
class DecompConfig:
    factor: FactorConfig = field(default_factory=FactorConfig)
    max_pipeline_retries: int = 10
    small_fallback_limit_edges: int = 12
    oracle_node_budget: int = 10**7
    star_retries: int = 3

    def __post_init__(self):
        if self.max_pipeline_retries < 1:
            raise ParameterError("max_pipeline_retries must be at least 1")


@dataclass(frozen=True)
class DegreeClassification:
    """``classes[t]`` holds the vertices whose degree is ``t`` modulo k."""

    k: int
    classes: tuple[tuple[int, ...], ...]

    def of(self, i: int) -> tuple[int, ...]:
        """Degree class with construction index ``i`` (residue ``i % k``)."""
        return self.classes[i % self.k]

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


@dataclass(frozen=True)
class Star:
    center: int
    branches: tuple[Edge, ...]

    @property
    def leaves(self) -> tuple[int, ...]:
        return tuple(sorted(v for e in self.branches for v in e if v != self.center))


@dataclass(frozen=True)
class StarForest:
    stars: tuple[Star, ...] = ()

    def edges(self) -> list[Edge]:
        return [e for s in self.stars for e in s.branches]

    def vertices(self) -> set[int]:
        return {v for e in self.edges() for v in e} | {s.center for s in self.stars}


@dataclass(frozen=True)
class RepairFamily:
    """``a*k`` edges ``core + {v}`` with ``a*k = b*r + q2``.

    Removing them turns the satellites from residue 2 to residue 1 and
    leaves the core vertices at residue 2 (they lose a multiple of k).
    """

    core: tuple[int, ...]
    satellites: tuple[int, ...]
    a: int
    b: int
    q2: int

    def edges(self) -> list[Edge]:
        return [tuple(sorted(self.core + (v,))) for v in self.satellites]


@dataclass
class Decomposition:
    k: int
    n: int
    r: int
    edges: tuple[Edge, ...]
    classes: list[list[int]]
    method: str
    seed: int
    lower_bounds: dict[str, Any] = field(default_factory=dict)
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def classes_used(self) -> int:
        return sum(1 for c in self.classes if c)

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "n": self.n,
            "r": self.r,
            "method": self.method,
            "seed": self.seed,
            "classes": [list(c) for c in self.classes],
            "edges": [list(e) for e in self.edges],
            "lower_bounds": dict(self.lower_bounds),
            "diagnostics": dict(self.diagnostics),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Decomposition":
        return cls(
            k=int(data["k"]),
            n=int(data["n"]),
            r=int(data["r"]),
            edges=tuple(tuple(e) for e in data.get("edges", [])),
            classes=[[int(i) for i in c] for c in data["classes"]],
            method=str(data.get("method", "")),
            seed=int(data.get("seed", 0)),
            lower_bounds=dict(data.get("lower_bounds", {})),
            diagnostics=dict(data.get("diagnostics", {})),
        )


def degree_classes(h: Hypergraph, k: int) -> DegreeClassification:
    if k < 2:
        raise ParameterError(f"k must be at least 2, got {k}")
    res = h.degrees % k
    return DegreeClassification(k, tuple(tuple(np.flatnonzero(res == t).tolist()) for t in range(k)))


def lower_bound_witness_k(h: Hypergraph, k: int) -> int | None:
    """A vertex of positive degree divisible by k, or None.

    Each colour class at such a vertex contributes 1 mod k to its degree,
    so at least k classes meet it.
    """
    if k < 2:
        raise ParameterError(f"k must be at least 2, got {k}")
    deg = h.degrees
    hits = np.flatnonzero((deg > 0) & (deg % k == 0))
    return int(hits[0]) if len(hits) else None


def lower_bound_witness_r(h: Hypergraph, k: int) -> bool:
    """True when n is not divisible by gcd(k, r) and every (r-1)-set lies in an edge.

    A spanning 1_k class needs its order divisible by gcd(k, r); if every
    class misses a vertex, r-1 classes leave some (r-1)-set uncovered.
    """
    if h.n % math.gcd(k, h.r) == 0 or h.n < h.r - 1:
        return False
    return h.min_codegree(h.r - 1) >= 1


def _orders(items: Iterable[int], rng: np.random.Generator | None) -> list[int]:
    items = sorted(items)
    if rng is not None:
        rng.shuffle(items)
    return items


def _pick_star(
    h: Hypergraph, center: int, branches: int, leaf_ok, used: set[int], rng: np.random.Generator | None
) -> Star | None:
    """Greedily choose ``branches`` edges at ``center`` with pairwise disjoint,
    unused, admissible leaves."""
    if branches == 0:
        return Star(center, ())
    cand = list(h.incidence[center])
    if rng is not None:
        rng.shuffle(cand)
    chosen: list[Edge] = []
    taken: set[int] = set()
    for eid in cand:
        e = h.edges[eid]
        leaves = [v for v in e if v != center]
        if all(leaf_ok(v) and v not in used and v not in taken for v in leaves):
            chosen.append(e)
            taken.update(leaves)
            if len(chosen) == branches:
                return Star(center, tuple(chosen))
    return None


def build_star_forest_case1(
    h: Hypergraph,
    classification: DegreeClassification,
    forbidden: Iterable[int] = (),
    seed: int | None = None,
) -> StarForest:
    """Vertex-disjoint stars fixing the class sizes of residues 3..k modulo r.

    For every class index i in 3..k, ``q_i = |V_i| mod r`` stars are built,
    each centred in V_i with i-1 branches whose other vertices lie in V_2.
    Removing a star moves its centre and leaves to residue 1.  With
    ``seed=None`` centres and branches are scanned in ascending order;
    otherwise the scan order is shuffled by the seed.
    """
    k, r = classification.k, h.r
    forbidden = set(forbidden)
    if k < 3:
        return StarForest()
    leaf_class = set(classification.of(2))
    attempts = 1 if seed is None else 3
    for attempt in range(attempts):
        rng = None if seed is None else stream(seed, "stars", attempt)
        used = set(forbidden)
        stars: list[Star] = []
        ok = True
        for i in range(3, k + 1):
            members = classification.of(i)
            need = len(members) % r
            for center in _orders((v for v in members if v not in used), rng):
                if need == 0:
                    break
                star = _pick_star(h, center, i - 1, leaf_class.__contains__, used, rng)
                if star is None:
                    continue
                stars.append(star)
                used.add(center)
                used.update(star.leaves)
                need -= 1
            if need:
                ok = False
                break
        if ok:
            return StarForest(tuple(stars))
    raise ConstructionError("star_forest", "not enough eligible centres or leaves",
                            {"class_sizes": classification.sizes()})


def _repair_multiplier(k: int, r: int, q2: int) -> tuple[int, int]:
    for a in range(r):
        if (a * k - q2) % r == 0:
            return a, (a * k - q2) // r
    raise ConsistencyError(f"no a < r with a*k = q2 (mod r) for k={k}, r={r}, q2={q2}")


def build_repair_s2(
    h: Hypergraph,
    classification: DegreeClassification,
    forbidden: Iterable[int] = (),
    seed: int | None = None,
) -> RepairFamily:
    """Edges through a fixed (r-1)-set of V_2 making ``|V_2|`` divisible by r.

    ``q2 = |V_2| mod r``; ``a`` is the least value in ``[0, r)`` with
    ``a*k = q2 (mod r)``.  The core is the lexicographically least
    (r-1)-subset of V_2 with at least ``a*k + 2r`` completions inside V_2
    (falling back to ``a*k`` if none has the margin); with a seed, a random
    qualifying core and random satellites are used instead.
    """
    k, r = classification.k, h.r
    v2 = classification.of(2)
    q2 = len(v2) % r
    a, b = _repair_multiplier(k, r, q2)
    if a == 0:
        return RepairFamily((), (), 0, b, q2)
    need = a * k
    pool = set(v2) - set(forbidden)
    counts: dict[tuple[int, ...], int] = {}
    for e in h.edges:
        if all(v in pool for v in e):
            for w in combinations(e, r - 1):
                counts[w] = counts.get(w, 0) + 1
    cores = sorted(w for w, c in counts.items() if c >= need + 2 * r)
    if not cores:
        cores = sorted(w for w, c in counts.items() if c >= need)
    if not cores:
        raise ConstructionError("repair_s2", f"no (r-1)-set of V_2 has {need} completions",
                                {"need": need, "pool": len(pool)})
    rng = None if seed is None else stream(seed, "repair")
    core = cores[0] if rng is None else cores[int(rng.integers(len(cores)))]
    core_set = set(core)
    sats = []
    for eid in h.edges_containing(core):
        v = next(x for x in h.edges[eid] if x not in core_set)
        if v in pool:
            sats.append(v)
    sats = _orders(sats, rng)[:need]
    return RepairFamily(tuple(core), tuple(sorted(sats)), a, b, q2)


@dataclass
class _Case1Parts:
    forest: StarForest
    repair: RepairFamily
    factors: dict[int, list[list[Edge]]]
    rest: list[Edge]
    flags: set[str]


def _check_residue(h: Hypergraph, k: int, vertices: Iterable[int], residue: int, what: str) -> None:
    deg = h.degrees
    for v in vertices:
        if deg[v] % k != residue % k:
            raise ConsistencyError(f"{what}: vertex {v} has degree {int(deg[v])}, expected residue {residue % k}")


def _case1_core(
    g: Hypergraph, k: int, forbidden: set[int], order_seed: int | None, factor_seed: int, cfg: DecompConfig
) -> _Case1Parts:
    """Stars, repair family, factors and the leftover 1_k class for ``g``.

    Requires every vertex of ``g`` to count (n divisible by gcd(k, r)).
    """
    r, n = g.r, g.n
    d = math.gcd(k, r)
    classification = degree_classes(g, k)
    forest = build_star_forest_case1(g, classification, forbidden, order_seed)
    g1 = g.remove_edges(forest.edges())
    _check_residue(g1, k, forest.vertices(), 1, "after star forest")
    cls1 = degree_classes(g1, k)
    for i in range(3, k + 1):
        if len(cls1.of(i)) % r:
            raise ConsistencyError(f"class {i} has size {len(cls1.of(i))} not divisible by r")
    q1, q2 = len(cls1.of(1)) % r, len(cls1.of(2)) % r
    if (q1 + q2 - n) % r:
        raise ConsistencyError("q1 + q2 != n (mod r)")
    if (sum(t * len(c) for t, c in enumerate(cls1.classes)) - r * g1.num_edges) % k:
        raise ConsistencyError("degree sum != r|E| (mod k)")
    if n % d == 0 and q2 % d:
        raise ConsistencyError(f"q2={q2} not divisible by gcd(k, r)={d}")

    repair = build_repair_s2(g1, cls1, forbidden | forest.vertices(), order_seed)
    g2 = g1.remove_edges(repair.edges())
    _check_residue(g2, k, repair.core, 2, "repair core")
    _check_residue(g2, k, repair.satellites, 1, "repair satellites")
    cls2 = degree_classes(g2, k)

    factors: dict[int, list[list[Edge]]] = {}
    flags: set[str] = set()
    removed: list[Edge] = []
    for i in range(2, k + 1):
        verts = cls2.of(i)
        if len(verts) % r:
            raise ConsistencyError(f"class {i} has size {len(verts)} not divisible by r before factoring")
        sub, mapping = g2.induced(verts)
        try:
            f = find_k_factor(sub, i - 1, derive_seed(factor_seed, "class", i), cfg.factor)
        except ConstructionError as exc:
            raise ConstructionError(f"factor[{i}]", str(exc), {"class_size": len(verts), **exc.report}) from exc
        flags.update(f.flags)
        if f.degraded:
            flags.add("degraded_partition")
        factors[i] = [[tuple(mapping[v] for v in e) for e in m] for m in f.matchings]
        removed.extend(e for m in factors[i] for e in m)
    rest = g2.remove_edges(removed)
    return _Case1Parts(forest, repair, factors, list(rest.edges), flags)


def _assemble_small_classes(parts: _Case1Parts, k: int) -> list[list[Edge]]:
    """Classes 1..k-1: matchings by index, star branches spread, repair in class 1."""
    out: list[list[Edge]] = [[] for _ in range(k - 1)]
    for i, matchings in parts.factors.items():
        for j, m in enumerate(matchings):
            out[j].extend(m)
    for star in parts.forest.stars:
        for j, e in enumerate(star.branches):
            out[j].append(e)
    if k > 1:
        out[0].extend(parts.repair.edges())
    return out


def _active(h: Hypergraph) -> tuple[Hypergraph, list[int]]:
    return h.induced(np.flatnonzero(h.degrees > 0).tolist())


def _to_indices(h: Hypergraph, mapping: list[int], classes: list[list[Edge]]) -> list[list[int]]:
    return [sorted(h.index(tuple(mapping[v] for v in e)) for e in c) for c in classes]


def _fallback(h: Hypergraph, k: int, seed: int, cfg: DecompConfig, diagnostics: dict[str, Any],
              stage: str) -> Decomposition:
    if h.num_edges > cfg.small_fallback_limit_edges:
        raise ConstructionError(stage, "pipeline retries exhausted", diagnostics)
    res = chi_exact(h, k, max_edges=cfg.small_fallback_limit_edges, node_budget=cfg.oracle_node_budget)
    if res.value is None:
        raise ConstructionError("fallback", "exact search ran out of budget", diagnostics)
    diagnostics["oracle_nodes"] = res.nodes_explored
    return Decomposition(k, h.n, h.r, h.edges, res.witness, "fallback", seed, diagnostics=diagnostics)


def decompose_case1(h: Hypergraph, k: int, seed: int, cfg: DecompConfig | None = None) -> Decomposition:
    """Exactly k colour classes when the non-isolated vertex count is divisible by gcd(k, r).

    Pipeline: star forest, repair family, an (i-1)-factor inside every
    degree class i in 2..k, then matchings/branches go to classes 1..k-1 and
    everything left (where every vertex has residue 1) to class k.
    """
    cfg = cfg or DecompConfig()
    if k < 2:
        raise ParameterError(f"k must be at least 2, got {k}")
    g, mapping = _active(h)
    if g.n % math.gcd(k, h.r):
        raise ParameterError(f"{g.n} non-isolated vertices is not divisible by gcd(k, r)")
    diagnostics: dict[str, Any] = {"failures": []}
    if g.num_edges == 0:
        return Decomposition(k, h.n, h.r, h.edges, [[] for _ in range(k)], "case1", seed, diagnostics=diagnostics)
    for attempt in range(cfg.max_pipeline_retries):
        order_seed = None if attempt == 0 else derive_seed(seed, "case1-order", attempt)
        try:
            parts = _case1_core(g, k, set(), order_seed, derive_seed(seed, "case1-factor", attempt), cfg)
        except ConstructionError as exc:
            diagnostics["failures"].append(exc.stage)
            continue
        local = _assemble_small_classes(parts, k) + [parts.rest]
        dec = Decomposition(k, h.n, h.r, h.edges, _to_indices(h, mapping, local), "case1", seed,
                            diagnostics=diagnostics)
        diagnostics.update(retries=attempt, flags=sorted(parts.flags),
                           stars=len(parts.forest.stars), repair_edges=len(parts.repair.satellites))
        check = verify_decomposition(h, dec)
        if not check:
            raise ConsistencyError(f"case 1 produced an invalid decomposition: {check.message}")
        return dec
    diagnostics["retries"] = cfg.max_pipeline_retries
    return _fallback(h, k, seed, cfg, diagnostics, "case1")


@dataclass(frozen=True)
class Case2Split:
    """Sub-hypergraphs ``parts[i]`` (on the original labels, ``R_i`` isolated)."""

    parts: tuple[Hypergraph, ...]
    reserved: tuple[tuple[int, ...], ...]


def split_case2(h: Hypergraph, k: int, seed: int, reserved: Iterable[Iterable[int]] | None = None) -> Case2Split:
    """Random split of the edges into r+1 parts avoiding disjoint reserved sets.

    ``q = n mod gcd(k, r)``.  Reserved sets ``R_0..R_r`` of size q are drawn
    at random (unless given); each edge goes to an index chosen uniformly
    among the i with ``e`` disjoint from ``R_i``.  An r-set meets at most r
    of the r+1 reserved sets, so such an index exists.
    """
    n, r = h.n, h.r
    q = n % math.gcd(k, r)
    if q == 0:
        raise ParameterError("n is divisible by gcd(k, r); nothing to split")
    if n < (r + 1) * q:
        raise ParameterError(f"n={n} too small for {r + 1} reserved sets of size {q}")
    rng = stream(seed, "case2-split")
    if reserved is None:
        chosen = rng.choice(n, size=(r + 1) * q, replace=False).tolist()
        reserved = [tuple(sorted(chosen[i * q:(i + 1) * q])) for i in range(r + 1)]
    else:
        reserved = [tuple(sorted(x)) for x in reserved]
        flat = [v for x in reserved for v in x]
        if len(reserved) != r + 1 or any(len(x) != q for x in reserved) or len(set(flat)) != len(flat):
            raise ParameterError(f"need {r + 1} disjoint reserved sets of size {q}")
    owner = {v: i for i, x in enumerate(reserved) for v in x}
    buckets: list[list[Edge]] = [[] for _ in range(r + 1)]
    draws = rng.random(h.num_edges)
    for e, u in zip(h.edges, draws.tolist()):
        hit = {owner[v] for v in e if v in owner}
        valid = [i for i in range(r + 1) if i not in hit]
        buckets[valid[int(u * len(valid))]].append(e)
    parts = tuple(Hypergraph._trusted(n, r, b) for b in buckets)
    return Case2Split(parts, tuple(reserved))


def _case2_once(g: Hypergraph, k: int, seed: int, attempt: int, cfg: DecompConfig):
    n, r = g.n, g.r
    order_seed = None if attempt == 0 else derive_seed(seed, "case2-order", attempt)
    split = split_case2(g, k, derive_seed(seed, "case2-split", attempt))
    reserved = split.reserved
    r0 = reserved[0]
    all_reserved = {v for x in reserved for v in x}
    leaf_residue = (r + 2) % k
    global_res = g.degrees % k
    leaf_ok = lambda v: global_res[v] == leaf_residue  # noqa: E731
    rng = None if order_seed is None else stream(order_seed, "case2-stars")

    # stars at the reserved vertices of R_0, one per (u, i), globally disjoint leaves
    used = set(all_reserved)
    s_edges: dict[int, list[Edge]] = {i: [] for i in range(1, r + 1)}
    branches_at: dict[int, list[Edge]] = {u: [] for u in r0}
    for i in range(1, r + 1):
        hi = split.parts[i]
        for u in r0:
            nb = (int(hi.degrees[u]) - 1) % k
            star = _pick_star(hi, u, nb, leaf_ok, used, rng)
            if star is None:
                raise ConstructionError("case2_stars", f"no star with {nb} branches at {u} in part {i}")
            used.update(star.leaves)
            s_edges[i].extend(star.branches)
            branches_at[u].extend(star.branches)
    s_vertices = set(r0) | {v for es in s_edges.values() for e in es for v in e}
    leaves = s_vertices - set(r0)

    big_classes: list[list[Edge]] = []
    moved: list[Edge] = []
    flags: set[str] = set()
    for i in range(1, r + 1):
        hi = split.parts[i].remove_edges(s_edges[i])
        verts = [v for v in range(n) if v not in set(reserved[i])]
        sub, mapping = hi.induced(verts)
        inverse = {v: j for j, v in enumerate(mapping)}
        _check_residue(sub, k, (inverse[u] for u in r0), 1, "reserved centre after stars")
        forbidden = {inverse[v] for v in s_vertices if v in inverse}
        parts = _case1_core(sub, k, forbidden, order_seed, derive_seed(seed, "case2-factor", attempt, i), cfg)
        flags |= parts.flags
        lift = lambda es: [tuple(mapping[v] for v in e) for e in es]  # noqa: E731
        big_classes.append(lift(parts.rest))
        moved += lift(parts.forest.edges()) + lift(parts.repair.edges())
        moved += lift([e for ms in parts.factors.values() for m in ms for e in m])

    h0 = Hypergraph._trusted(n, r, list(split.parts[0].edges) + moved)
    if h0.num_edges != split.parts[0].num_edges + len(moved):
        raise ConsistencyError("edges moved into part 0 collide")
    verts0 = [v for v in range(n) if v not in set(r0)]
    sub0, mapping0 = h0.induced(verts0)
    if sub0.num_edges != h0.num_edges:
        raise ConsistencyError("part 0 has an edge through R_0")
    inverse0 = {v: j for j, v in enumerate(mapping0)}
    _check_residue(sub0, k, (inverse0[v] for v in leaves), 1, "star leaves in part 0")
    parts0 = _case1_core(sub0, k, {inverse0[v] for v in leaves}, order_seed,
                         derive_seed(seed, "case2-factor", attempt, 0), cfg)
    flags |= parts0.flags
    lift0 = lambda es: [tuple(mapping0[v] for v in e) for e in es]  # noqa: E731
    big_classes.append(lift0(parts0.rest))

    extra = [lift0(c) for c in _assemble_small_classes(parts0, k)] + [[]]
    for u in r0:
        es = branches_at[u]
        if not es:
            continue
        spread = len(es) % k or k
        for j, e in enumerate(es[:spread]):
            extra[j].append(e)
        extra[0].extend(es[spread:])
    return big_classes + extra, {"reserved": [list(x) for x in reserved], "flags": sorted(flags)}


def decompose_case2(h: Hypergraph, k: int, seed: int, cfg: DecompConfig | None = None) -> Decomposition:
    """At most k + r + 1 colour classes when the non-isolated vertex count is
    not divisible by gcd(k, r).

    The edges are split among r+1 parts avoiding reserved vertex sets; parts
    1..r are each reduced to a spanning 1_k class by stars at R_0 plus the
    case-1 machinery, whose removed edges join part 0, which is treated the
    same way.  The stars at R_0 and the pieces removed from part 0 fill k
    more classes.
    """
    cfg = cfg or DecompConfig()
    if k < 2:
        raise ParameterError(f"k must be at least 2, got {k}")
    g, mapping = _active(h)
    if g.n % math.gcd(k, h.r) == 0:
        raise ParameterError(f"{g.n} non-isolated vertices is divisible by gcd(k, r); use case 1")
    diagnostics: dict[str, Any] = {"failures": []}
    for attempt in range(cfg.max_pipeline_retries):
        try:
            local, extra = _case2_once(g, k, seed, attempt, cfg)
        except (ConstructionError, ParameterError) as exc:
            diagnostics["failures"].append(getattr(exc, "stage", "split"))
            if isinstance(exc, ParameterError):
                break
            continue
        extra["reserved"] = [[mapping[v] for v in x] for x in extra["reserved"]]
        diagnostics.update(retries=attempt, **extra)
        dec = Decomposition(k, h.n, h.r, h.edges, _to_indices(h, mapping, local), "case2", seed,
                            diagnostics=diagnostics)
        check = verify_decomposition(h, dec)
        if not check:
            raise ConsistencyError(f"case 2 produced an invalid decomposition: {check.message}")
        return dec
    diagnostics.setdefault("retries", cfg.max_pipeline_retries)
    return _fallback(h, k, seed, cfg, diagnostics, "case2")


def decompose(h: Hypergraph, k: int, seed: int, cfg: DecompConfig | None = None) -> Decomposition:
    """Decompose ``h`` into 1_k classes, dispatching on n mod gcd(k, r).

    n counts non-isolated vertices; isolated ones play no role.  The
    lower-bound witnesses are recorded in ``lower_bounds``.  Raises
    ``ConstructionError`` if both the pipeline and the exact fallback fail.
    """
    if k < 2:
        raise ParameterError(f"k must be at least 2, got {k}")
    active = int((h.degrees > 0).sum())
    if active % math.gcd(k, h.r) == 0:
        dec = decompose_case1(h, k, seed, cfg)
    else:
        dec = decompose_case2(h, k, seed, cfg)
    dec.lower_bounds = {"k_witness": lower_bound_witness_k(h, k), "r_bound": lower_bound_witness_r(h, k)}
    return dec


def verify_decomposition(h: Hypergraph, d: Decomposition) -> Check:
    """Check that the classes partition the edges of ``h`` into 1_k-hypergraphs."""
    k = d.k
    if k < 2:
        return Check(False, f"invalid modulus k={k}")
    if d.edges and tuple(tuple(e) for e in d.edges) != h.edges:
        return Check(False, "edge list does not match the hypergraph")
    owner: dict[int, int] = {}
    for c, cls in enumerate(d.classes):
        for idx in cls:
            if not 0 <= idx < h.num_edges:
                return Check(False, f"class {c}: edge index {idx} out of range")
            if idx in owner:
                return Check(False, f"edge {h.edges[idx]} in classes {owner[idx]} and {c}")
            owner[idx] = c
    if len(owner) != h.num_edges:
        missing = next(i for i in range(h.num_edges) if i not in owner)
        return Check(False, f"edge not covered: {h.edges[missing]}")
    for c, cls in enumerate(d.classes):
        deg: dict[int, int] = {}
        for idx in cls:
            for v in h.edges[idx]:
                deg[v] = deg.get(v, 0) + 1
        for v in sorted(deg):
            if deg[v] % k != 1:
                return Check(False, f"class {c}: vertex {v} has degree {deg[v]} (residue {deg[v] % k})")
    return Check(True)
