"""Seeded Monte-Carlo trials over the binomial random hypergraph model.

Trial ``i`` uses the seed ``trial_seed(master_seed, i)`` for everything it
samples, so records are a pure function of the configuration and come out
in trial order whatever the worker count.  Wall-clock times are only
written when ``timing`` is requested; otherwise the ``elapsed_ms`` column is
left empty so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable, TextIO

from .decomp import (
    DecompConfig,
    Decomposition,
    decompose,
    degree_classes,
    lower_bound_witness_k,
    lower_bound_witness_r,
    verify_decomposition,
)
from .errors import BudgetError, ConstructionError, ParameterError
from .factor import find_k_factor, find_perfect_matching, verify_factor
from .hypercore import Hypergraph, ModelParams, generate, save_hypergraph
from .oracle import binomial_mod_k, chi_exact
from .rng import trial_seed

MODES = ("decompose", "factor", "matching", "binmod", "chi-exact")
CSV_COLUMNS = [
    "trial", "seed", "n", "p", "r", "k", "method", "classes_used",
    "k_witness", "r_bound", "verified", "elapsed_ms", "failure_stage",
]


@dataclass
class ExperimentConfig:
    n: int
    r: int
    k: int
    p: float
    trials: int = 1
    master_seed: int = 0
    mode: str = "decompose"
    jobs: int | None = None
    out: str | None = None
    fmt: str = "csv"
    save_artifacts: str | None = None
    timing: bool = False
    decomp: DecompConfig = field(default_factory=DecompConfig)

    def validate(self) -> None:
        ModelParams(self.n, self.r, self.p, self.master_seed).validate()
        if self.trials < 1:
            raise ParameterError("trials must be at least 1")
        if self.k < 2 and self.mode != "factor":
            raise ParameterError("k must be at least 2")
        if self.mode not in MODES:
            raise ParameterError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        if self.fmt not in ("csv", "jsonl"):
            raise ParameterError(f"unknown format {self.fmt!r}")
        if self.mode in ("factor", "matching") and self.n % self.r:
            raise ParameterError(f"mode {self.mode} needs n divisible by r")


@dataclass
class TrialRecord:
    trial: int
    seed: int
    n: int
    p: float
    r: int
    k: int
    method: str
    classes_used: int
    k_witness_found: bool
    r_bound_holds: bool
    verified: bool
    class_sizes: list[int] = field(default_factory=list)
    class_sizes_ok: bool = False
    elapsed_ms: float | None = None
    failure_stage: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def csv_row(self) -> list[str]:
        return [
            str(self.trial), str(self.seed), str(self.n), repr(self.p), str(self.r), str(self.k),
            self.method, str(self.classes_used), _flag(self.k_witness_found), _flag(self.r_bound_holds),
            _flag(self.verified), "" if self.elapsed_ms is None else f"{self.elapsed_ms:.1f}",
            self.failure_stage or "",
        ]


def _flag(x: bool) -> str:
    return "true" if x else "false"


def _class_size_window(n: int, k: int) -> tuple[float, float]:
    return 3 * n / (4 * k), 5 * n / (4 * k)


def _base_record(cfg: ExperimentConfig, index: int, seed: int, h: Hypergraph) -> TrialRecord:
    k = max(cfg.k, 2)
    sizes = degree_classes(h, k).sizes()
    lo, hi = _class_size_window(cfg.n, k)
    return TrialRecord(
        trial=index, seed=seed, n=cfg.n, p=cfg.p, r=cfg.r, k=cfg.k, method="", classes_used=0,
        k_witness_found=lower_bound_witness_k(h, k) is not None,
        r_bound_holds=lower_bound_witness_r(h, k),
        verified=False, class_sizes=sizes, class_sizes_ok=all(lo <= s <= hi for s in sizes),
    )


def run_trial(cfg: ExperimentConfig, index: int) -> TrialRecord:
    seed = trial_seed(cfg.master_seed, index)
    start = time.perf_counter()
    h = generate(ModelParams(cfg.n, cfg.r, cfg.p, seed))
    rec = _base_record(cfg, index, seed, h)
    artifacts = Path(cfg.save_artifacts) if cfg.save_artifacts else None
    try:
        if cfg.mode == "decompose":
            dec = decompose(h, cfg.k, seed, cfg.decomp)
            rec.method = dec.method
            rec.classes_used = dec.classes_used
            rec.verified = bool(verify_decomposition(h, dec))
            rec.extra["classes_emitted"] = len(dec.classes)
            if artifacts is not None:
                save_hypergraph(h, artifacts / f"trial{index:05d}.hyp")
                (artifacts / f"trial{index:05d}.decomposition.json").write_text(json.dumps(dec.to_json()))
        elif cfg.mode == "factor":
            f = find_k_factor(h, cfg.k, seed, cfg.decomp.factor)
            rec.method = "factor"
            rec.classes_used = len(f.matchings)
            rec.verified = bool(verify_factor(h, f))
            rec.extra.update(flags=f.flags, degraded=f.degraded)
            if artifacts is not None:
                save_hypergraph(h, artifacts / f"trial{index:05d}.hyp")
                (artifacts / f"trial{index:05d}.factor.json").write_text(json.dumps(f.to_json()))
        elif cfg.mode == "matching":
            res = find_perfect_matching(h, seed, cfg.decomp.factor)
            rec.method = res.method
            rec.classes_used = 1 if res.edges else 0
            covered = sorted(v for e in res.edges for v in e)
            rec.verified = covered == list(range(h.n)) and all(e in h for e in res.edges)
        elif cfg.mode == "binmod":
            dist = binomial_mod_k(math.comb(cfg.n - 1, cfg.r - 1), cfg.p, cfg.k)
            freq = [s / cfg.n for s in rec.class_sizes]
            rec.method = "binmod"
            rec.verified = True
            rec.extra.update(
                empirical=freq, exact=list(dist.probs),
                max_gap=max(abs(a - b) for a, b in zip(freq, dist.probs)),
            )
        elif cfg.mode == "chi-exact":
            res = chi_exact(h, cfg.k, max_edges=cfg.decomp.small_fallback_limit_edges,
                            node_budget=cfg.decomp.oracle_node_budget)
            if res.value is None:
                raise ConstructionError("chi_exact", "node budget exhausted")
            rec.method = "chi-exact"
            rec.classes_used = res.value
            witness = Decomposition(cfg.k, h.n, h.r, h.edges, res.witness, "fallback", seed)
            rec.verified = bool(verify_decomposition(h, witness))
            try:
                dec = decompose(h, cfg.k, seed, cfg.decomp)
                rec.extra.update(decompose_classes=dec.classes_used, chi_le_decompose=res.value <= dec.classes_used)
            except ConstructionError as exc:
                rec.extra.update(decompose_classes=None, decompose_failure=exc.stage)
    except ConstructionError as exc:
        rec.method = "failed"
        rec.failure_stage = exc.stage
    except BudgetError:
        rec.method = "failed"
        rec.failure_stage = "budget"
    if cfg.timing:
        rec.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return rec


def _run_indexed(args: tuple[ExperimentConfig, int]) -> TrialRecord:
    return run_trial(*args)


def summarize(records: list[TrialRecord], cfg: ExperimentConfig) -> dict[str, Any]:
    n_trials = len(records)
    ok = [rec for rec in records if rec.failure_stage is None]
    hist = Counter(rec.classes_used for rec in ok)
    lo, hi = _class_size_window(cfg.n, max(cfg.k, 2))
    summary: dict[str, Any] = {
        "mode": cfg.mode,
        "n": cfg.n, "r": cfg.r, "k": cfg.k, "p": cfg.p,
        "trials": n_trials,
        "master_seed": cfg.master_seed,
        "successes": len(ok),
        "success_rate": len(ok) / n_trials if n_trials else 0.0,
        "verified": sum(rec.verified for rec in records),
        "classes_used_histogram": {str(c): hist[c] for c in sorted(hist)},
        "k_witness_fraction": sum(rec.k_witness_found for rec in records) / n_trials,
        "r_bound_fraction": sum(rec.r_bound_holds for rec in records) / n_trials,
        "class_size_window": [lo, hi],
        "class_size_trials_within": sum(rec.class_sizes_ok for rec in records),
        "failure_stages": dict(sorted(Counter(rec.failure_stage for rec in records if rec.failure_stage).items())),
    }
    if cfg.mode == "binmod":
        gaps = [rec.extra["max_gap"] for rec in records]
        summary["mean_max_gap"] = sum(gaps) / len(gaps)
    if cfg.mode == "chi-exact":
        pairs = [rec.extra.get("chi_le_decompose") for rec in records if rec.extra.get("decompose_classes")]
        summary["chi_le_decompose"] = f"{sum(bool(x) for x in pairs)}/{len(pairs)}"
    if cfg.timing:
        summary["elapsed_ms_total"] = sum(rec.elapsed_ms or 0.0 for rec in records)
    return summary


def run_experiment(cfg: ExperimentConfig) -> tuple[list[TrialRecord], dict[str, Any]]:
    cfg.validate()
    if cfg.save_artifacts:
        Path(cfg.save_artifacts).mkdir(parents=True, exist_ok=True)
    jobs = cfg.jobs or os.cpu_count() or 1
    tasks = [(cfg, i) for i in range(cfg.trials)]
    if jobs == 1 or cfg.trials == 1:
        records = [_run_indexed(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map() yields in submission order, which is trial order
            records = list(pool.map(_run_indexed, tasks, chunksize=max(1, cfg.trials // (4 * jobs))))
    return records, summarize(records, cfg)


def write_csv(records: Iterable[TrialRecord], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())


def write_jsonl(records: Iterable[TrialRecord], fh: TextIO) -> None:
    for rec in records:
        fh.write(json.dumps(asdict(rec), sort_keys=True) + "\n")


def render(records: list[TrialRecord], fmt: str) -> str:
    buf = io.StringIO()
    (write_csv if fmt == "csv" else write_jsonl)(records, buf)
    return buf.getvalue()
