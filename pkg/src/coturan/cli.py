"""Command-line entry point: ``coturan <subcommand> ...``.

Exit codes: 0 success, 2 usage or input error, 3 an inconclusive result is
present, 4 an internal invariant was violated.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .blowup import BlowupSpec, blowup_text, build_blowup, witness
from .bounds import USER, ConstantsLedger, ConstantUnavailable, bounds_report, t_ell_oracle
from .experiments import (
    CSV_COLUMNS,
    MODES,
    ConfigError,
    InvariantViolation,
    Table,
    parse_config,
    run_experiment,
    write_outputs,
)
from .hypercore import HypergraphError, max_ell_degree, min_ell_degree, read_document, write_hypergraph
from .indep import DEFAULT_BUDGET, INCONCLUSIVE, alpha_exact, alpha_exhaustive, alpha_greedy
from .sampling import SubsampleFailure, SubsampleParams, min_lemma_m, subsample
from .steiner import SteinerSystem, generate_steiner, verify_steiner

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_INVARIANT = 0, 2, 3, 4

CSV_HELP = (
    "CSV columns (all subcommands and experiment modes): "
    + ",".join(CSV_COLUMNS)
    + ". Unused fields hold NA; exact rationals are written as p/q."
)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load(path: str):
    return read_document(Path(path).read_text())


def cmd_gen_steiner(args) -> int:
    S = generate_steiner(args.m, args.r, args.restarts, args.seed, args.budget)
    _emit(S.to_text(), args.out)
    return EXIT_INCONCLUSIVE if S.alpha_S.status == INCONCLUSIVE else EXIT_OK


def cmd_blowup(args) -> int:
    base, meta = _load(args.steiner_file)
    if not verify_steiner(base):
        raise HypergraphError(f"{args.steiner_file} is not a partial Steiner system")
    system = SteinerSystem.from_hypergraph(base, args.budget)
    if "seed" in meta and meta["seed"] not in ("None", ""):
        system = SteinerSystem(base, system.alpha_S, int(meta["seed"]), 0)
    spec = BlowupSpec(system, args.d, args.augment)
    H = build_blowup(spec)
    text = blowup_text(spec, H)
    record = {"n": H.n, "r": H.r, "m": spec.m, "d": spec.d, "edges": len(H.edges), "augment": spec.augment_even_r}
    code = EXIT_OK
    if args.t is not None:
        w = witness(H, args.t, args.alpha_mode, args.budget)
        record.update(
            t=w.t,
            max_codegree=w.max_codegree,
            alpha=w.alpha,
            alpha_upper=w.alpha_upper,
            alpha_lower=w.alpha_lower,
            alpha_status=w.alpha_status,
            tau_upper=f"{w.tau_upper.numerator}/{w.tau_upper.denominator}",
            valid=w.valid,
        )
        if w.alpha_status == INCONCLUSIVE:
            code = EXIT_INCONCLUSIVE
    if args.out:
        Path(args.out + ".hg").write_text(text)
        Path(args.out + ".witness.json").write_text(json.dumps(record, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
        sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    return code


def cmd_alpha(args) -> int:
    H, _ = _load(args.file)
    if args.method == "exact":
        res = alpha_exact(H, args.budget, args.seed)
    elif args.method == "exhaustive":
        res = alpha_exhaustive(H)
    else:
        res = alpha_greedy(H, args.seed)
    record = {
        "alpha": res.alpha,
        "method": res.method,
        "status": res.status,
        "upper": res.upper,
        "witness": list(res.witness),
        "nodes": res.nodes,
    }
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    return EXIT_INCONCLUSIVE if res.status == INCONCLUSIVE else EXIT_OK


def cmd_codegree(args) -> int:
    H, _ = _load(args.file)
    ell = args.ell if args.ell is not None else H.r - 1
    record = {"ell": ell, "n": H.n, "r": H.r, "min": min_ell_degree(H, ell), "max": max_ell_degree(H, ell)}
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_subsample(args) -> int:
    H, _ = _load(args.file)
    m = args.m if args.m is not None else min_lemma_m(H.r, args.epsilon)
    params = SubsampleParams(args.epsilon, m, args.max_trials, args.seed)
    res = subsample(H, params, check_conditions=not args.no_check)
    _emit(write_hypergraph(res.sub, {"kind": "subsample", "seed": args.seed, "epsilon": args.epsilon}), args.out)
    stats = json.dumps(res.stats(), sort_keys=True) + "\n"
    if args.out and args.out != "-":
        sys.stdout.write(stats)
    else:
        sys.stderr.write(stats)
    return EXIT_OK


def _ledger(args) -> ConstantsLedger:
    led = ConstantsLedger(args.r)
    for name in ("a2", "b1", "c0", "c1", "c2"):
        value = getattr(args, name)
        if value is not None:
            led = led.with_constant(name, value, USER)
    return led


def cmd_bounds(args) -> int:
    ledger = _ledger(args)
    rep = bounds_report(args.t, args.r, ledger)
    sources = ledger.derived().sources
    table = Table(args.seed)
    cols = dict(t=args.t, r=args.r)
    table.add("classical-lo", rep.turan_lower, "ok", "turan-density-lower", ell=1, **cols)
    table.add("classical-hi", rep.turan_upper, "ok", "turan-density-upper", ell=1, **cols)
    for kind, value, const in (("tau-lo", rep.tau_lower, "c1"), ("tau-hi", rep.tau_upper, "c2")):
        status = "ok" if value is not None else "unavailable"
        table.add(kind, value, status, f"ledger:{const}:{sources.get(const, 'missing')}", ell=args.r - 1, **cols)
    _emit(table.to_csv(), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    value = t_ell_oracle(args.n, args.t, args.r, args.ell)
    if args.format == "csv":
        table = Table(args.seed)
        status = "ok" if value is not None else "infeasible"
        table.add("oracle", value, status, "exhaustive", t=args.t, r=args.r, ell=args.ell, n=args.n)
        _emit(table.to_csv(), args.out)
    else:
        record = {"n": args.n, "t": args.t, "r": args.r, "ell": args.ell, "value": value}
        _emit(json.dumps(record, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_experiment(args) -> int:
    path = Path(args.config)
    cfg = parse_config(path.read_text(), base_dir=path.parent)
    if args.seed is not None and args.seed != cfg.seed:
        raise ConfigError(0, f"--seed {args.seed} conflicts with config seed {cfg.seed}")
    if args.out:
        cfg = type(cfg)(**{**cfg.__dict__, "output_dir": args.out})
    table = run_experiment(cfg)
    csv_path, summary_path = write_outputs(cfg, table)
    sys.stdout.write(f"{csv_path}\n{summary_path}\n")
    inconclusive = any("inconclusive" in s for s in table.statuses)
    return EXIT_INCONCLUSIVE if inconclusive else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="coturan",
        description="Build and check hypergraphs with small independence number and small codegree.",
        epilog=CSV_HELP,
    )
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen-steiner", help="generate a partial Steiner (m, r, r-1)-system")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--r", type=int, default=3)
    s.add_argument("--restarts", type=int, default=1)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen_steiner)

    s = sub.add_parser("blowup", help="blow up a Steiner system file; optionally emit a tau witness")
    s.add_argument("steiner_file")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--augment", action="store_true", help="add the even-r pair edges")
    s.add_argument("--t", type=int)
    s.add_argument("--alpha-mode", choices=("exact", "certify"), default="exact")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--out", help="output prefix; writes PREFIX.hg and PREFIX.witness.json")
    s.set_defaults(func=cmd_blowup)

    s = sub.add_parser("alpha", help="independence number of a hypergraph file")
    s.add_argument("file")
    s.add_argument("--method", choices=("exact", "exhaustive", "greedy"), default="exact")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_alpha)

    s = sub.add_parser("codegree", help="min and max ell-degree of a hypergraph file")
    s.add_argument("file")
    s.add_argument("--ell", type=int)
    s.set_defaults(func=cmd_codegree)

    s = sub.add_parser("subsample", help="random induced subhypergraph with bounded codegree density")
    s.add_argument("file")
    s.add_argument("--epsilon", type=float, required=True)
    s.add_argument("--m", type=int, help="sample size (default: least m meeting the size conditions)")
    s.add_argument("--max-trials", type=int, default=64)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--no-check", action="store_true", help="skip the size-condition precondition")
    s.add_argument("--out")
    s.set_defaults(func=cmd_subsample)

    s = sub.add_parser("bounds", help="classical and envelope bounds as CSV", epilog=CSV_HELP)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--r", type=int, default=3)
    for name in ("a2", "b1", "c0", "c1", "c2"):
        s.add_argument(f"--{name}", type=float)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=("csv",), default="csv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("oracle", help="exact T_ell(n, t, r) by exhaustive search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--r", type=int, default=3)
    s.add_argument("--ell", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=("csv", "json"), default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser(
        "experiment",
        help=f"run a key=value config (modes: {', '.join(MODES)})",
        epilog=CSV_HELP,
    )
    s.add_argument("config")
    s.add_argument("--seed", type=int, help="must match the config seed if given")
    s.add_argument("--out", help="override output_dir")
    s.add_argument("--format", choices=("csv",), default="csv")
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InvariantViolation, AssertionError) as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return EXIT_INVARIANT
    except SubsampleFailure as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INCONCLUSIVE
    except (HypergraphError, ConfigError, ConstantUnavailable, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
