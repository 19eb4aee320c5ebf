"""Command-line front end: ``online-coloring <subcommand> [flags]``.

Machine output goes to stdout or ``--out``; the human summary goes to
stderr.  Exit status: 0 ok, 1 domain error, 2 usage error, 3 bound
violation or failed claim.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__, adversary, bounds
from .algorithms import ALGORITHMS, ADVICE_ALGORITHMS, make_algorithm
from .analysis import enumerate_orders
from .claims import run_claims
from .errors import ColoringError, ConfigurationError, ProtocolViolation
from .graph import bipartition, read_edge_list, to_edge_list
from .harness import ARRIVALS, SWEEP_ALGORITHMS, ExperimentConfig, run_experiment, sweep_errors
from .instances import FAMILIES, RANDOM_FAMILIES, InstanceSpec, generate
from .reveal import given_order, make_predictions, replay, run, sample_order

log = logging.getLogger("online_coloring")

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires {', '.join(missing)}")


def _spec_from_args(args) -> InstanceSpec:
    _need(args, "family")
    if args.family == "from-file":
        _need(args, "in_path")
        return InstanceSpec("from-file", path=args.in_path)
    _need(args, "n")
    if args.family in RANDOM_FAMILIES:
        _need(args, "seed")
    return InstanceSpec(args.family, args.n, args.seed, args.p, args.legs)


def _predictions(args, graph, algo_name, seed_required=True):
    """Prediction vector from --error-mode/--k/--errors, or None for plain algorithms."""
    mode = args.error_mode
    if algo_name not in ADVICE_ALGORITHMS:
        if mode not in (None, "none") or args.k is not None or args.errors is not None:
            raise ConfigurationError(f"{algo_name} does not consume predictions")
        return None, None
    bip = bipartition(graph)
    mode = mode or "none"
    if mode == "random":
        _need(args, "k", "seed")
        return make_predictions(bip, "random", k=args.k, seed=args.seed), args.seed
    if mode == "explicit":
        _need(args, "errors")
        return make_predictions(bip, "explicit", errors=_int_list(args.errors)), None
    return make_predictions(bip), None


def _order(args, n):
    text = args.order
    if text is None:
        return given_order(range(n), n)
    if text.startswith("random:"):
        try:
            seed = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad order {text!r}; use random:SEED") from None
        return sample_order(n, seed)
    return given_order(_int_list(text), n)


# -- subcommands ---------------------------------------------------------------

def cmd_generate(args) -> int:
    spec = _spec_from_args(args)
    g = generate(spec)
    _emit(to_edge_list(g), args.out)
    _say(f"{spec.family}: n={g.n} m={g.m} hash={g.instance_hash()[:12]}")
    return EXIT_OK


def cmd_run(args) -> int:
    _need(args, "in_path", "algo")
    g = read_edge_list(args.in_path)
    algo = make_algorithm(args.algo)
    if args.replay:
        data = json.loads(Path(args.replay).read_text())
        t = replay(g, data, algo)
        recorded = [s["color"] for s in data["steps"]]
        replayed = [t.colors[s["vertex"]] for s in data["steps"]]
        _emit(t.to_json(), args.out)
        if recorded != replayed:
            _say("replay diverged from the recorded colors")
            return EXIT_VIOLATION
        _say(f"replay matches: {len(recorded)} steps, X={t.X}")
        return EXIT_OK
    preds, err_seed = _predictions(args, g, args.algo)
    order = _order(args, g.n)
    t = run(g, order, preds, algo)
    if err_seed is not None:
        t.seeds["errors"] = err_seed
    _emit(t.to_json(), args.out)
    extra = "" if preds is None else f" k={preds.k} k_min={preds.k_min}"
    _say(f"{args.algo}: n={g.n} X={t.X}{extra}")
    return EXIT_OK


def cmd_exact(args) -> int:
    _need(args, "in_path", "algo")
    g = read_edge_list(args.in_path)
    preds, _ = _predictions(args, g, args.algo)
    dist = enumerate_orders(g, args.algo, preds, jobs=args.jobs)
    _emit(json.dumps(dist.to_dict(), indent=1) + "\n", args.out)
    _say(f"{args.algo}: {dist.total} orders, E[X]={dist.to_dict()['expectation']}, max X={dist.max_colors}")
    return EXIT_OK


def cmd_adversary(args) -> int:
    _need(args, "ell", "algo")
    out = adversary.force(args.ell, make_algorithm(args.algo))
    data = out.to_dict()
    data["edge_list"] = to_edge_list(out.graph)
    _emit(json.dumps(data, indent=1) + "\n", args.out)
    if args.tree_out:
        Path(args.tree_out).write_text(to_edge_list(out.graph))
    if out.verdict == adversary.FORCED:
        _say(f"verdict forced({out.X}), {out.vertices_used} vertices (budget {adversary.tree_size(args.ell)})")
    else:
        _say(f"verdict {out.verdict}: witness of {len(out.witness)} vertices, k_min={out.witness_k_min}, "
             f"{out.witness_colors} colors")
    return EXIT_OK


def _report_out(report, args) -> None:
    text = report.to_csv() if args.format == "csv" else report.to_json()
    _emit(text, args.out)


def cmd_experiment(args) -> int:
    if args.config:
        data = json.loads(Path(args.config).read_text())
        if args.seed is not None:
            data["seed"] = args.seed
        if "seed" not in data:
            raise UsageError("experiment config needs a seed (in the file or via --seed)")
        data.setdefault("jobs", args.jobs)
        cfg = ExperimentConfig.from_dict(data)
    else:
        _need(args, "algo", "trials", "seed")
        spec = _spec_from_args(args)
        if spec.is_random:
            spec = InstanceSpec(spec.family, spec.n, None, spec.p, spec.legs)  # fresh instance per trial
        ks = None if args.k is None else _int_list(args.k)
        cfg = ExperimentConfig([spec], args.algo.split(","), args.trials, args.seed, k_values=ks,
                               arrival=args.arrival, jobs=args.jobs)
    report = run_experiment(cfg)
    _report_out(report, args)
    for c in report.cells:
        flag = "VIOLATION" if c["violation"] else "ok"
        _say(f"{c['cell']} {c['algorithm']:<17} n={c['n']:<7} k={c['k']!s:<5} mean={c['mean']:.3f} "
             f"max={c['max']} {flag}")
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_sweep(args) -> int:
    _need(args, "algo", "trials", "seed", "k")
    if args.algo not in SWEEP_ALGORITHMS:
        raise UsageError(f"sweep needs one of {', '.join(SWEEP_ALGORITHMS)}")
    spec = _spec_from_args(args)
    if spec.is_random:
        spec = InstanceSpec(spec.family, spec.n, None, spec.p, spec.legs)
    rows, report = sweep_errors(spec, args.algo, _int_list(args.k), args.trials, args.seed,
                                arrival=args.arrival, jobs=args.jobs)
    if args.format == "csv":
        _emit(report.to_csv(), args.out)
    else:
        _emit(json.dumps({"rows": rows, "report": report.to_dict()}, indent=1) + "\n", args.out)
    for r in rows:
        b = "-" if r["bound"] is None else f"{r['bound']:.3f}"
        _say(f"k={r['k']:<5} mean={r['mean']:.3f} max={r['max']:<3} bound={b}{' VIOLATION' if r['violation'] else ''}")
    return EXIT_VIOLATION if report.violations else EXIT_OK


def _jsonable(value):
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if hasattr(value, "numerator") and not isinstance(value, int):
        return {"value": float(value), "exact": f"{value.numerator}/{value.denominator}"}
    if isinstance(value, bounds.TailSumCheck):
        return {"s": value.s, "upper": float(value.upper), "bound": float(value.bound), "holds": value.holds}
    return value


def cmd_check_bounds(args) -> int:
    params = {"n": args.n, "k": args.k_int, "ell": args.ell, "c": args.c, "s": args.s}
    kinds = [args.kind] if args.kind else [
        kind for kind, (_, names) in bounds.BOUNDS.items() if all(params.get(p) is not None for p in names)
    ]
    if not kinds:
        raise UsageError("give --kind or enough of --n --k --ell --c --s to evaluate a bound")
    results = []
    violated = False
    for kind in kinds:
        try:
            value = bounds.evaluate(kind, **params)
        except ColoringError as exc:
            if args.kind:
                raise
            results.append({"kind": kind, "error": str(exc)})
            continue
        row = {"kind": kind, "params": {p: params[p] for p in bounds.BOUNDS[kind][1]}, "value": _jsonable(value)}
        if isinstance(value, (bounds.TailSumCheck, bounds.GrowthCheck)) and not value.holds:
            violated = True
        if args.observed is not None and not isinstance(value, (bounds.TailSumCheck, bounds.GrowthCheck)):
            row["observed"] = args.observed
            row["violated"] = args.observed > float(value) + 1e-9
            violated |= row["violated"]
        results.append(row)
        _say(f"{kind}: {json.dumps(row['value'])}" + (" VIOLATION" if row.get("violated") else ""))
    _emit(json.dumps(results, indent=1) + "\n", args.out)
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_verify_claims(args) -> int:
    _need(args, "seed")
    only = None if args.only is None else set(_int_list(args.only))
    report = run_claims(args.seed, "quick" if args.quick else "full", only=only,
                        determinism=only is None or 10 in only)
    _emit(report.to_json(), args.out)
    for r in report.results:
        t = report.timings.get(r.id, 0.0)
        _say(f"[{'PASS' if r.passed else 'FAIL'}] claim {r.id:>2}: {r.name} ({t:.1f}s)")
    _say("all claims passed" if report.passed else "SOME CLAIMS FAILED")
    return EXIT_OK if report.passed else EXIT_VIOLATION


COMMANDS = {
    "generate": cmd_generate,
    "run": cmd_run,
    "exact": cmd_exact,
    "adversary": cmd_adversary,
    "experiment": cmd_experiment,
    "sweep": cmd_sweep,
    "check-bounds": cmd_check_bounds,
    "verify-claims": cmd_verify_claims,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="online-coloring",
                                     description="Online coloring of trees and bipartite graphs with predictions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    algos = sorted(ALGORITHMS)

    def common(p, *groups):
        p.add_argument("--out", help="write machine output here instead of stdout")
        if "instance" in groups:
            p.add_argument("--family", choices=FAMILIES)
            p.add_argument("--n", type=int)
            p.add_argument("--p", type=float, help="edge probability for random-bipartite")
            p.add_argument("--legs", type=int, help="leg count for spider")
        if "input" in groups:
            p.add_argument("--in", dest="in_path", help="edge-list file")
        if "algo" in groups:
            p.add_argument("--algo", choices=algos)
        if "advice" in groups:
            p.add_argument("--k", type=int)
            p.add_argument("--error-mode", choices=("none", "random", "explicit"))
            p.add_argument("--errors", help="comma-separated vertex ids with flipped advice")
        if "seed" in groups:
            p.add_argument("--seed", type=int)
        if "jobs" in groups:
            p.add_argument("--jobs", type=int, default=1)
        if "batch" in groups:
            p.add_argument("--trials", type=int)
            p.add_argument("--arrival", choices=ARRIVALS, default="random")
            p.add_argument("--format", choices=("json", "csv"), default="json")

    common(sub.add_parser("generate", help="write an instance as an edge list"), "instance", "input", "seed")
    p = sub.add_parser("run", help="one online run; prints the transcript")
    common(p, "input", "algo", "advice", "seed")
    p.add_argument("--order", help='comma-separated arrival order or "random:SEED" (default 0..n-1)')
    p.add_argument("--replay", help="transcript JSON to replay against --in")
    p = sub.add_parser("exact", help="exact distribution of colors over all orders")
    common(p, "input", "algo", "advice", "seed", "jobs")
    p = sub.add_parser("adversary", help="play the adaptive adversary against an advice algorithm")
    common(p, "algo")
    p.add_argument("--ell", type=int)
    p.add_argument("--tree-out", help="also write the built graph as an edge list")
    p = sub.add_parser("experiment", help="Monte Carlo experiment")
    common(p, "instance", "input", "seed", "jobs", "batch")
    p.add_argument("--algo", help="comma-separated algorithm names")
    p.add_argument("--k", help="comma-separated error counts for advice algorithms")
    p.add_argument("--config", help="experiment config JSON")
    p = sub.add_parser("sweep", help="colors against the number of prediction errors")
    common(p, "instance", "input", "seed", "jobs", "batch")
    p.add_argument("--algo", choices=SWEEP_ALGORITHMS)
    p.add_argument("--k", help="comma-separated error counts")
    p = sub.add_parser("check-bounds", help="evaluate closed-form bounds")
    common(p)
    p.add_argument("--kind", choices=sorted(bounds.BOUNDS))
    p.add_argument("--n", type=int)
    p.add_argument("--k", dest="k_int", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--s", type=int)
    p.add_argument("--observed", type=float, help="exit 3 if this exceeds the bound")
    p = sub.add_parser("verify-claims", help="run the acceptance suite")
    common(p, "seed")
    p.add_argument("--quick", action="store_true", help="reduced trial counts")
    p.add_argument("--only", help="comma-separated claim ids")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on unknown flags
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigurationError) as exc:
        parser.print_usage(sys.stderr)
        _say(f"{parser.prog} {args.command}: error: {exc}")
        return EXIT_USAGE
    except ProtocolViolation as exc:
        _say(f"protocol violation: {exc}")
        return EXIT_VIOLATION
    except (ColoringError, OSError, json.JSONDecodeError, KeyError) as exc:
        _say(f"error: {exc}")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
