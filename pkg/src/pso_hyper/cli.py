"""Command-line entry point: ``run``, ``compare``, ``affv`` and ``oracle``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, NonFiniteFitnessError
from .experiment import (
    RunConfig,
    compare_strategies,
    emit_chart,
    emit_csv,
    run_experiment,
    summarize_traces,
)
from .fitness import FitnessSpec, QuadratureSpec, affine_error_model, affv
from .sampling import random_case
from .solver import PIVOTS, SolveMode, SolveStrategy, grid_oracle, solve_pivot
from .state import Hyperparameters

log = logging.getLogger("pso_hyper")


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return value


def _add_function(p: argparse.ArgumentParser) -> None:
    p.add_argument("--function", required=True, choices=["f1", "f2", "f3"])
    p.add_argument("--x", type=float, default=0.5, help="F3 regression input")
    p.add_argument("--y", type=float, default=None, help="F3 target (default 0.1*x + 0.2)")


def _add_run_options(p: argparse.ArgumentParser) -> None:
    _add_function(p)
    p.add_argument("--particles", type=_positive, default=2)
    p.add_argument("--epochs", type=_positive, default=20)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--c1", type=float, default=1.0)
    p.add_argument("--c2", type=float, default=1.0)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--runs", type=_positive, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pso-hyper", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run seeded experiments and write CSV traces")
    _add_run_options(run)
    run.add_argument("--strategy", default="sequential", choices=[m.value for m in SolveMode])
    run.add_argument("--out", required=True, type=Path)
    run.add_argument("--chart", type=Path)

    cmp_ = sub.add_parser("compare", help="summarize several strategies on paired seeds")
    _add_run_options(cmp_)
    cmp_.add_argument(
        "--strategies", default="sequential,fixed",
        help="comma-separated list of " + ",".join(m.value for m in SolveMode),
    )
    cmp_.add_argument("--chart", type=Path, help="gbest curves of run 0 per strategy")

    q = sub.add_parser("affv", help="average fitness over the unit box")
    _add_function(q)
    q.add_argument("--points", type=_positive, default=1024)

    o = sub.add_parser("oracle", help="closed-form weight vs brute-force grid argmin")
    _add_function(o)
    o.add_argument("--pivot", required=True, choices=list(PIVOTS))
    o.add_argument("--step", type=float, default=1e-3)
    o.add_argument("--seed", type=_u64, default=0)
    o.add_argument("--cases", type=_positive, default=100)
    return parser


def _fitness(args: argparse.Namespace) -> FitnessSpec:
    y = 0.1 * args.x + 0.2 if args.y is None else args.y
    return FitnessSpec(args.function, x=args.x, y=y)


def _config(args: argparse.Namespace, mode: str) -> RunConfig:
    defaults = Hyperparameters(args.alpha, args.c1, args.c2)
    return RunConfig(
        fitness=_fitness(args),
        n_particles=args.particles,
        epochs=args.epochs,
        strategy=SolveStrategy(mode, defaults),
        seed=args.seed,
        n_runs=args.runs,
    )


def trace_paths(out: Path, n_runs: int) -> list[Path]:
    """``out`` itself for a single run, else ``<stem>_runNNN<suffix>`` per run."""
    if n_runs == 1:
        return [out]
    return [out.with_name(f"{out.stem}_run{i:03d}{out.suffix}") for i in range(n_runs)]


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _config(args, args.strategy)
    traces = run_experiment(cfg)
    for trace, path in zip(traces, trace_paths(args.out, cfg.n_runs)):
        emit_csv(trace, path)
        log.info("wrote %s", path)
    if args.chart:
        emit_chart(traces, [f"{t.label} seed {t.seed}" for t in traces], args.chart)
    print(json.dumps(summarize_traces(cfg.strategy.label, traces).as_dict(), indent=2))
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    names = [s.strip() for s in args.strategies.split(",") if s.strip()]
    cfg = _config(args, names[0])
    strategies = [SolveStrategy(name, cfg.defaults) for name in names]
    report = compare_strategies(cfg, strategies, cfg.n_runs)
    if args.chart:
        first = [
            run_experiment(RunConfig(cfg.fitness, cfg.n_particles, cfg.epochs, s, cfg.seed, 1))[0]
            for s in strategies
        ]
        emit_chart(first, [s.label for s in strategies], args.chart)
    print(json.dumps([s.as_dict() for s in report.values()], indent=2))
    return 0


def _cmd_affv(args: argparse.Namespace) -> int:
    print(format(affv(_fitness(args), QuadratureSpec(args.points)), ".17g"))
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    f = _fitness(args)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    print("case\tclosed_form\tgrid_argmin\tdeviation")
    for i in range(args.cases):
        case = random_case(rng, f)
        model = affine_error_model(f, case.particle, case.gbest, case.draws)
        closed = solve_pivot(model, args.pivot, case.weights).clamped
        grid = grid_oracle(f, case.particle, case.gbest, case.draws, args.pivot,
                           case.weights, args.step)
        worst = max(worst, abs(closed - grid))
        print(f"{i}\t{closed:.17g}\t{grid:.17g}\t{abs(closed - grid):.3g}")
    print(f"max_deviation\t{worst:.17g}")
    return 0


COMMANDS = {"run": _cmd_run, "compare": _cmd_compare, "affv": _cmd_affv, "oracle": _cmd_oracle}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except (ConfigurationError, NonFiniteFitnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
