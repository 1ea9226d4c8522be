"""Command line front end: ``run``, ``bench`` and ``curve`` subcommands.

Exit codes: 0 ok, 1 runtime failure (e.g. unwritable output directory),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .benchmarks import registry_names
from .harness import (
    PAPER_SUITE,
    ExperimentConfig,
    default_jobs,
    emit_table,
    emit_trace,
    format_number,
    run_experiment,
    run_named,
    write_outputs,
)
from .trochoid import TrochoidSpec, trochoid_points
from .tso import TsoConfig


class _FMT(argparse.ArgumentDefaultsHelpFormatter):
    def _get_help_string(self, action):
        # keep hand-written default notes, skip the generic "(default: None)"
        if action.default is None or "default" in (action.help or ""):
            return action.help
        return super()._get_help_string(action)


def _add_algorithm_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("algorithm")
    g.add_argument("--dim", type=int, default=30, help="problem dimension")
    g.add_argument("--pop", type=int, default=50, help="population size")
    g.add_argument("--budget", type=int, default=None, help="objective evaluations per run (default 10000*dim)")
    g.add_argument("--pm", type=float, default=0.05, help="per-coordinate perturbation probability")
    g.add_argument("--p-switch", type=float, default=0.9, help="probability of the global move")
    g.add_argument("--p-escape", type=float, default=0.1, help="probability of the escape step")
    g.add_argument("--escape", choices=("on", "off"), default="off", help="enable the escape step")
    g.add_argument("--p-dist-step", type=float, default=0.8,
                   help="probability of the distance-based global step size")
    g.add_argument("--b-scale", type=float, default=10.0, help="B factors are drawn from [0, b-scale)")
    g.add_argument("--log-offset", type=float, default=None,
                   help="offset in ln(itr + offset) of the global step (default 1 for code, 10 for text)")
    g.add_argument("--variant", choices=("code", "text"), default="code", help="move equation variant")
    g.add_argument("--repair", choices=("independent", "shared"), default=None,
                   help="out-of-box resampling: one draw per component, or the reference code's shared "
                        "draws (default independent; shared with --suite paper)")
    g.add_argument("--seed", type=int, default=0, help="seed (master seed for bench)")
    g.add_argument("--config", type=Path, default=None,
                   help="flat JSON object of flag defaults (keys as in --help, dashes or underscores)")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="tso", description="Trochoid Search Optimization", formatter_class=_FMT)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="one seeded run", formatter_class=_FMT)
    run.add_argument("--function", required=True, help=f"one of: {', '.join(registry_names())}")
    run.add_argument("--trace", type=Path, default=None, help="write the improvement trace CSV here")
    _add_algorithm_flags(run)

    bench = sub.add_parser("bench", help="multi-run benchmark tables", formatter_class=_FMT)
    which = bench.add_mutually_exclusive_group()
    which.add_argument("--suite", default=None, help="named suite; 'paper' is the eight-function table set")
    which.add_argument("--functions", default=None, help="comma separated registry names")
    bench.add_argument("--runs", type=int, default=30, help="independent runs per function")
    bench.add_argument("--out", type=Path, required=True, help="output directory")
    bench.add_argument("--jobs", type=int, default=default_jobs(), help="worker processes")
    _add_algorithm_flags(bench)

    curve = sub.add_parser("curve", help="trochoid points as CSV on stdout", formatter_class=_FMT)
    curve.add_argument("--R", type=float, default=1.0, help="rolling circle radius")
    curve.add_argument("--B", type=float, default=1.0, help="attachment ratio (distance / R)")
    curve.add_argument("--theta-min", type=float, default=0.0, help="first angle")
    curve.add_argument("--theta-max", type=float, default=12.566370614359172, help="last angle")
    curve.add_argument("--n", type=int, default=200, help="number of samples")
    return parser, {"run": run, "bench": bench, "curve": curve}


def _apply_config(sub: argparse.ArgumentParser, path: Path):
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError) as exc:
        sub.error(f"cannot read config {path}: {exc}")
    if not isinstance(data, dict):
        sub.error("config must be a flat JSON object")
    known = {a.dest for a in sub._actions}
    defaults = {}
    for key, value in data.items():
        dest = key.replace("-", "_")
        if dest not in known or dest in ("config", "help"):
            sub.error(f"unknown config key {key!r}")
        if dest == "escape" and isinstance(value, bool):
            value = "on" if value else "off"
        defaults[dest] = value
    sub.set_defaults(**defaults)


def _tso_config(args, repair_default: str = "independent") -> TsoConfig:
    repair = args.repair or repair_default
    return TsoConfig(
        pop_size=args.pop, dim=args.dim, eval_budget=args.budget, pm=args.pm, p_switch=args.p_switch,
        p_escape=args.p_escape, escape_enabled=args.escape == "on", p_dist_step=args.p_dist_step,
        b_scale=args.b_scale, log_offset_global=args.log_offset, variant=args.variant,
        shared_repair=repair == "shared", seed=args.seed,
    )


def _usage_error(sub, msg):
    sub.print_usage(sys.stderr)
    print(f"{sub.prog}: error: {msg}", file=sys.stderr)
    return 2


def cmd_run(args, sub) -> int:
    try:
        cfg = _tso_config(args)
    except ValueError as exc:
        return _usage_error(sub, str(exc))
    try:
        result = run_named(args.function, cfg)
    except KeyError as exc:
        return _usage_error(sub, exc.args[0])
    except ValueError as exc:
        return _usage_error(sub, str(exc))
    print(f"best={format_number(result.best_fitness)} evals={result.evals_used}")
    if args.trace is not None:
        try:
            args.trace.write_text(emit_trace(result))
        except OSError as exc:
            print(f"cannot write trace: {exc}", file=sys.stderr)
            return 1
    return 0


def cmd_bench(args, sub) -> int:
    if args.functions:
        names = [n.strip() for n in args.functions.split(",") if n.strip()]
        repair_default = "independent"
    elif args.suite in (None, "paper"):
        names = list(PAPER_SUITE)
        repair_default = "shared"
    else:
        return _usage_error(sub, f"unknown suite {args.suite!r} (known: paper)")
    try:
        exp = ExperimentConfig(_tso_config(args, repair_default), names, args.runs, args.seed)
    except KeyError as exc:
        return _usage_error(sub, exc.args[0])
    except ValueError as exc:
        return _usage_error(sub, str(exc))
    try:
        args.out.mkdir(parents=True, exist_ok=True)
        probe = args.out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        print(f"cannot write to {args.out}: {exc}", file=sys.stderr)
        return 1
    results = run_experiment(exp, jobs=max(1, args.jobs))
    try:
        write_outputs(results, exp, args.out)
    except OSError as exc:
        print(f"cannot write results: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(emit_table(results, "text"))
    return 0


def cmd_curve(args, sub) -> int:
    try:
        pts = trochoid_points(TrochoidSpec(args.R, args.B), args.theta_min, args.theta_max, args.n)
    except ValueError as exc:
        return _usage_error(sub, str(exc))
    out = ["theta,x,y"]
    out += [",".join(format_number(v) for v in row) for row in pts]
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def main(argv=None) -> int:
    parser, subs = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    sub = subs[args.command]
    if getattr(args, "config", None) is not None:
        _apply_config(sub, args.config)
        args = parser.parse_args(argv)
    handler = {"run": cmd_run, "bench": cmd_bench, "curve": cmd_curve}[args.command]
    return handler(args, sub)


if __name__ == "__main__":
    sys.exit(main())
