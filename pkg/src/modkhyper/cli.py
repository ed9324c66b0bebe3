"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 construction failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .decomp import DecompConfig, Decomposition, decompose, verify_decomposition
from .errors import BudgetError, ConstructionError, ModkError, ParameterError, ParseError
from .factor import Factor, FactorConfig, find_k_factor, verify_factor
from .harness import MODES, ExperimentConfig, render, run_experiment
from .hypercore import Hypergraph, ModelParams, generate, load_hypergraph, save_hypergraph, write_hypergraph
from .oracle import binomial_mod_k, chi_exact

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CONSTRUCTION = 0, 1, 2, 3


def _epsilon(text: str) -> float | str:
    if text == "auto":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or a float, got {text!r}") from None


def _add_model(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--n", type=int, required=required, help="number of vertices")
    p.add_argument("--r", type=int, required=required, help="edge size")
    p.add_argument("--p", type=float, required=required, help="edge probability")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (64-bit)")


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--hypergraph", type=Path, help="read the hypergraph from this file instead of sampling")
    _add_model(p, required=False)


def _add_tuning(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-retries", type=int, default=None, help="pipeline and matching retry budget")
    p.add_argument("--fallback-limit", type=int, default=None,
                   help="largest vertex count handed to the exact matching search")
    p.add_argument("--epsilon", type=_epsilon, default="auto", help="density margin, or 'auto'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modkhyper", description="Mod-k edge decompositions of uniform hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("gen", help="sample a binomial random hypergraph")
    _add_model(p, required=True)
    p.add_argument("--out", type=Path, help="output file (stdout if omitted)")

    p = sub.add_parser("decompose", help="decompose into 1_k classes")
    _add_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", type=Path, help="decomposition JSON (stdout if omitted)")
    _add_tuning(p)

    p = sub.add_parser("factor", help="find a k-factor as k disjoint perfect matchings")
    _add_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", type=Path, help="factor JSON (stdout if omitted)")
    _add_tuning(p)

    p = sub.add_parser("verify", help="check a decomposition or factor against a hypergraph")
    p.add_argument("--hypergraph", type=Path, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--decomposition", type=Path)
    group.add_argument("--factor", type=Path)

    p = sub.add_parser("chi-exact", help="exact mod-k chromatic index of a small hypergraph")
    _add_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-edges", type=int, default=12)

    p = sub.add_parser("binmod", help="residue distribution of Bin(n, p) modulo k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("experiment", help="seeded Monte-Carlo trials")
    _add_model(p, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--mode", choices=MODES, default="decompose")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    p.add_argument("--out", type=Path, help="records file (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--save-artifacts", type=Path, help="directory for per-trial hypergraphs and results")
    p.add_argument("--summary", type=Path, help="write the summary JSON here (stderr if omitted)")
    p.add_argument("--timing", action="store_true", help="fill the elapsed_ms column")
    _add_tuning(p)
    return parser


def _decomp_config(args: argparse.Namespace) -> DecompConfig:
    fkw: dict = {"epsilon": args.epsilon}
    dkw: dict = {}
    if args.max_retries is not None:
        fkw["max_matching_retries"] = args.max_retries
        dkw["max_pipeline_retries"] = args.max_retries
    if args.fallback_limit is not None:
        fkw["small_fallback_limit"] = args.fallback_limit
    return DecompConfig(factor=FactorConfig(**fkw), **dkw)


def _source(args: argparse.Namespace) -> Hypergraph:
    if args.hypergraph is not None:
        return load_hypergraph(args.hypergraph)
    if args.n is None or args.r is None or args.p is None:
        raise ParameterError("give --hypergraph or all of --n, --r, --p")
    return generate(ModelParams(args.n, args.r, args.p, args.seed))


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            out.write_text(text)
        except OSError as exc:
            raise OSError(f"{out}: {exc.strerror or exc}") from exc


def _load_json(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})", exc.lineno) from None


def _cmd_gen(args) -> int:
    h = generate(ModelParams(args.n, args.r, args.p, args.seed))
    if args.out is None:
        sys.stdout.write(write_hypergraph(h))
    else:
        save_hypergraph(h, args.out)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    h = _source(args)
    dec = decompose(h, args.k, args.seed, _decomp_config(args))
    check = verify_decomposition(h, dec)
    _emit(json.dumps(dec.to_json()) + "\n", args.out)
    print(f"method={dec.method} classes_used={dec.classes_used} verified={bool(check)}", file=sys.stderr)
    return EXIT_OK if check else EXIT_VERIFY


def _cmd_factor(args) -> int:
    h = _source(args)
    f = find_k_factor(h, args.k, args.seed, _decomp_config(args).factor)
    check = verify_factor(h, f)
    _emit(json.dumps(f.to_json()) + "\n", args.out)
    print(f"k={f.k} flags={','.join(f.flags) or '-'} verified={bool(check)}", file=sys.stderr)
    return EXIT_OK if check else EXIT_VERIFY


def _cmd_verify(args) -> int:
    h = load_hypergraph(args.hypergraph)
    if args.decomposition is not None:
        check = verify_decomposition(h, Decomposition.from_json(_load_json(args.decomposition)))
    else:
        check = verify_factor(h, Factor.from_json(_load_json(args.factor)))
    print("ok" if check else f"FAILED: {check.message}")
    return EXIT_OK if check else EXIT_VERIFY


def _cmd_chi(args) -> int:
    h = _source(args)
    res = chi_exact(h, args.k, max_edges=args.max_edges)
    if res.value is None:
        raise ConstructionError("chi_exact", "node budget exhausted")
    print(json.dumps({"chi": res.value, "witness": res.witness, "nodes": res.nodes_explored}))
    return EXIT_OK


def _cmd_binmod(args) -> int:
    dist = binomial_mod_k(args.n, args.p, args.k)
    if args.format == "json":
        print(json.dumps({"k": dist.k, "probs": list(dist.probs), "max_deviation": dist.max_deviation}))
    else:
        for t, pr in enumerate(dist.probs):
            print(f"P(X = {t} mod {args.k}) = {pr:.17g}")
        print(f"max deviation from 1/{args.k}: {dist.max_deviation:.6g}")
    return EXIT_OK


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig(
        n=args.n, r=args.r, k=args.k, p=args.p, trials=args.trials, master_seed=args.seed,
        mode=args.mode, jobs=args.jobs, out=str(args.out) if args.out else None, fmt=args.format,
        save_artifacts=str(args.save_artifacts) if args.save_artifacts else None,
        timing=args.timing, decomp=_decomp_config(args),
    )
    records, summary = run_experiment(cfg)
    _emit(render(records, cfg.fmt), args.out)
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.summary is not None:
        _emit(text, args.summary)
    else:
        sys.stderr.write(text)
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "decompose": _cmd_decompose,
    "factor": _cmd_factor,
    "verify": _cmd_verify,
    "chi-exact": _cmd_chi,
    "binmod": _cmd_binmod,
    "experiment": _cmd_experiment,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except ConstructionError as exc:
        print(f"construction failed at {exc.stage}: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except (ParameterError, ParseError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
