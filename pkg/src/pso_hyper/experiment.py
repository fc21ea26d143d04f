"""Seeded convergence runs, CSV traces, summary statistics and SVG charts."""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError
from .fitness import FitnessSpec, affine_error_model, evaluate
from .solver import SolveStrategy, select_hyperparameters
from .state import Hyperparameters, SwarmState
from .swarm import draw_random, initialize_swarm, refresh_bests, update_velocity_position

CONVERGENCE_THRESHOLD = 1e-6
CSV_COLUMNS = (
    "epoch", "particle", "fitness", "gbest_fitness",
    "pos_0", "pos_1", "vel_0", "vel_1",
    "alpha", "c1", "c2",
    "alpha_fallback", "c1_fallback", "c2_fallback",
)
U64 = 2**64


@dataclass(frozen=True)
class RunConfig:
    fitness: FitnessSpec
    n_particles: int = 2
    epochs: int = 20
    strategy: SolveStrategy = field(default_factory=SolveStrategy)
    seed: int = 0
    n_runs: int = 1

    def __post_init__(self) -> None:
        if self.n_particles < 1:
            raise ConfigurationError("n_particles must be >= 1")
        if self.epochs < 1:
            raise ConfigurationError("epochs must be >= 1")
        if self.n_runs < 1:
            raise ConfigurationError("n_runs must be >= 1")
        if not 0 <= self.seed < U64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer")

    @property
    def defaults(self) -> Hyperparameters:
        return self.strategy.defaults

    def run_seed(self, run_index: int) -> int:
        return (self.seed + run_index) % U64


@dataclass(frozen=True)
class ParticleRecord:
    fitness: float
    position: tuple[float, ...]
    velocity: tuple[float, ...]
    weights: Hyperparameters | None  # None for the initial state
    fallbacks: tuple[bool, bool, bool] | None


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    global_best_fitness: float
    particles: tuple[ParticleRecord, ...]


@dataclass
class ConvergenceTrace:
    label: str
    seed: int
    dimension: int
    epochs: list[EpochRecord] = field(default_factory=list)

    @property
    def gbest_curve(self) -> list[float]:
        return [e.global_best_fitness for e in self.epochs]

    @property
    def final_gbest(self) -> float:
        return self.epochs[-1].global_best_fitness

    def epochs_to_threshold(self, threshold: float = CONVERGENCE_THRESHOLD) -> int | None:
        for e in self.epochs:
            if e.global_best_fitness <= threshold:
                return e.epoch
        return None


def _record(s: SwarmState, fitness: FitnessSpec, weights=None, flags=None) -> EpochRecord:
    rows = []
    for i, p in enumerate(s.particles):
        rows.append(
            ParticleRecord(
                evaluate(fitness, p.position),
                p.position,
                p.velocity,
                weights[i] if weights else None,
                flags[i] if flags else None,
            )
        )
    return EpochRecord(s.epoch, s.global_best_fitness, tuple(rows))


def run_single(cfg: RunConfig, run_index: int = 0) -> ConvergenceTrace:
    seed = cfg.run_seed(run_index)
    rng = np.random.default_rng(seed)
    f = cfg.fitness
    state = initialize_swarm(cfg.n_particles, f.dimension, f, rng)
    trace = ConvergenceTrace(cfg.strategy.label, seed, f.dimension, [_record(state, f)])
    for epoch in range(1, cfg.epochs + 1):
        gbest = state.global_best_position
        moved, weights, flags = [], [], []
        for p in state.particles:
            r = draw_random(rng, f.dimension)
            model = affine_error_model(f, p, gbest, r)
            h, fb = select_hyperparameters(cfg.strategy, model, epoch)
            moved.append(update_velocity_position(p, gbest, h, r))
            weights.append(h)
            flags.append(fb)
        state = SwarmState(tuple(moved), state.global_best_position, state.global_best_fitness, epoch)
        state = refresh_bests(state, f)
        trace.epochs.append(_record(state, f, weights, flags))
    return trace


def run_experiment(cfg: RunConfig) -> list[ConvergenceTrace]:
    """One trace per run; run ``i`` is seeded with ``cfg.seed + i``."""
    return [run_single(cfg, i) for i in range(cfg.n_runs)]


@dataclass(frozen=True)
class StrategySummary:
    label: str
    n_runs: int
    median: float
    mean: float
    min: float
    max: float
    success_rate: float
    epochs_to_threshold: tuple[int | None, ...]
    threshold: float = CONVERGENCE_THRESHOLD

    @property
    def median_epochs_to_threshold(self) -> float | None:
        hits = [e for e in self.epochs_to_threshold if e is not None]
        return statistics.median(hits) if hits else None

    def as_dict(self) -> dict:
        return {
            "strategy": self.label,
            "runs": self.n_runs,
            "median_final_gbest": self.median,
            "mean_final_gbest": self.mean,
            "min_final_gbest": self.min,
            "max_final_gbest": self.max,
            "success_rate": self.success_rate,
            "median_epochs_to_threshold": self.median_epochs_to_threshold,
            "epochs_to_threshold": [
                "none" if e is None else e for e in self.epochs_to_threshold
            ],
        }


SummaryReport = dict[str, StrategySummary]


def summarize(
    label: str,
    finals: Sequence[float],
    epochs_to_threshold: Sequence[int | None],
    threshold: float = CONVERGENCE_THRESHOLD,
) -> StrategySummary:
    finals = list(finals)
    if not finals:
        raise ConfigurationError("cannot summarize zero runs")
    return StrategySummary(
        label=label,
        n_runs=len(finals),
        median=statistics.median(finals),
        mean=math.fsum(finals) / len(finals),
        min=min(finals),
        max=max(finals),
        success_rate=sum(v <= threshold for v in finals) / len(finals),
        epochs_to_threshold=tuple(epochs_to_threshold),
        threshold=threshold,
    )


def summarize_traces(
    label: str, traces: Sequence[ConvergenceTrace], threshold: float = CONVERGENCE_THRESHOLD
) -> StrategySummary:
    return summarize(
        label,
        [t.final_gbest for t in traces],
        [t.epochs_to_threshold(threshold) for t in traces],
        threshold,
    )


def compare_strategies(
    cfg: RunConfig, strategies: Sequence[SolveStrategy], n_runs: int | None = None
) -> SummaryReport:
    """Run every strategy on the same seed set and summarize final gbest fitness."""
    n_runs = cfg.n_runs if n_runs is None else n_runs
    if n_runs < 1:
        raise ConfigurationError("n_runs must be >= 1")
    report: SummaryReport = {}
    for strategy in strategies:
        sub = RunConfig(cfg.fitness, cfg.n_particles, cfg.epochs, strategy, cfg.seed, n_runs)
        report[strategy.label] = summarize_traces(strategy.label, run_experiment(sub))
    return report


def _fmt(value: float) -> str:
    return format(value, ".17g")


def trace_rows(trace: ConvergenceTrace) -> Iterable[list[str]]:
    for e in trace.epochs:
        for i, p in enumerate(e.particles):
            pos = [_fmt(v) for v in p.position] + [""] * (2 - trace.dimension)
            vel = [_fmt(v) for v in p.velocity] + [""] * (2 - trace.dimension)
            if p.weights is None:
                weights = ["", "", ""]
                flags = ["", "", ""]
            else:
                weights = [_fmt(v) for v in p.weights.as_tuple()]
                flags = [str(int(b)) for b in p.fallbacks]
            yield [str(e.epoch), str(i), _fmt(p.fitness), _fmt(e.global_best_fitness),
                   pos[0], pos[1], vel[0], vel[1], *weights, *flags]


def emit_csv(trace: ConvergenceTrace, path: str | Path) -> None:
    """Write one row per (epoch, particle); epoch 0 is the initial swarm.

    Epoch-0 rows leave the weight and fallback columns empty since no update
    has been applied yet.
    """
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            writer.writerows(trace_rows(trace))
    except OSError as exc:
        raise OSError(f"cannot write trace to {path}: {exc}") from exc


def read_final_gbest(path: str | Path, threshold: float = CONVERGENCE_THRESHOLD):
    """``(final gbest fitness, epochs to threshold)`` recovered from a trace CSV."""
    by_epoch: dict[int, float] = {}
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            by_epoch[int(row["epoch"])] = float(row["gbest_fitness"])
    epochs = sorted(by_epoch)
    hit = next((e for e in epochs if by_epoch[e] <= threshold), None)
    return by_epoch[epochs[-1]], hit


def summarize_csv(
    label: str, paths: Sequence[str | Path], threshold: float = CONVERGENCE_THRESHOLD
) -> StrategySummary:
    finals, hits = zip(*(read_final_gbest(p, threshold) for p in paths))
    return summarize(label, finals, hits, threshold)


CHART_FLOOR = 1e-18
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def emit_chart(
    traces: Sequence[ConvergenceTrace], labels: Sequence[str], path: str | Path
) -> None:
    """Global-best fitness per epoch on a log axis, one polyline per trace."""
    if not traces:
        raise ConfigurationError("emit_chart needs at least one trace")
    if len(traces) != len(labels):
        raise ConfigurationError("traces and labels must have equal length")

    width, height = 640, 400
    left, right, top, bottom = 70, 160, 20, 50
    pw, ph = width - left - right, height - top - bottom
    curves = [[math.log10(max(v, CHART_FLOOR)) for v in t.gbest_curve] for t in traces]
    n_epochs = max(len(t.epochs) for t in traces) - 1
    lo = math.floor(min(min(c) for c in curves))
    hi = math.ceil(max(max(c) for c in curves))
    if hi == lo:
        hi = lo + 1

    def sx(epoch: int) -> float:
        return left + pw * (epoch / n_epochs if n_epochs else 0.0)

    def sy(logv: float) -> float:
        return top + ph * (hi - logv) / (hi - lo)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>',
    ]
    for k in range(lo, hi + 1):
        y = sy(k)
        out.append(f'<text x="{left - 6}" y="{y + 4:.2f}" text-anchor="end">1e{k}</text>')
    for e in range(0, n_epochs + 1, max(1, n_epochs // 10)):
        out.append(f'<text x="{sx(e):.2f}" y="{top + ph + 16}" text-anchor="middle">{e}</text>')
    out.append(f'<text x="{left + pw / 2}" y="{height - 10}" text-anchor="middle">epoch</text>')
    out.append(
        f'<text x="16" y="{top + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2})">global best fitness</text>'
    )
    for i, (trace, curve) in enumerate(zip(traces, curves)):
        colour = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{sx(e.epoch):.2f},{sy(v):.2f}" for e, v in zip(trace.epochs, curve))
        out.append(f'<polyline class="series" fill="none" stroke="{colour}" points="{pts}"/>')
    for i, label in enumerate(labels):
        colour = _PALETTE[i % len(_PALETTE)]
        y = top + 14 + 16 * i
        x = left + pw + 12
        out.append(
            f'<g class="legend"><line x1="{x}" y1="{y - 4}" x2="{x + 18}" y2="{y - 4}" '
            f'stroke="{colour}"/><text x="{x + 24}" y="{y}">{_escape(label)}</text></g>'
        )
    out.append("</svg>")
    path = Path(path)
    try:
        path.write_text("\n".join(out) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write chart to {path}: {exc}") from exc


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
