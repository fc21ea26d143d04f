"""Closed-form per-parameter optima of the post-update squared error."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConfigurationError
from .fitness import AffineErrorModel, FitnessSpec, evaluate_many
from .state import Hyperparameters, ParticleState, RandomDraws
from .swarm import moved_components

PIVOT_GUARD = 1e-12
PIVOTS = ("alpha", "c1", "c2")


class SolveMode(str, enum.Enum):
    FIXED = "fixed"
    ALPHA = "alpha"
    C1 = "c1"
    C2 = "c2"
    SEQUENTIAL = "sequential"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class SolveStrategy:
    mode: SolveMode = SolveMode.SEQUENTIAL
    defaults: Hyperparameters = field(default_factory=lambda: Hyperparameters(0.5, 1.0, 1.0))

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", SolveMode(self.mode))

    @property
    def label(self) -> str:
        return self.mode.value


@dataclass(frozen=True)
class SolveResult:
    raw: float
    clamped: float
    fell_back: bool


def _solve(numerator: float, pivot: float, default: float) -> SolveResult:
    # root of numerator + weight * pivot = 0
    if abs(pivot) <= PIVOT_GUARD:
        return SolveResult(math.nan, default, True)
    raw = -numerator / pivot
    return SolveResult(raw, min(1.0, max(0.0, raw)), False)


def solve_alpha(m: AffineErrorModel, c1: float, c2: float, default_alpha: float) -> SolveResult:
    return _solve(m.delta + c1 * m.b_coeff + c2 * m.c_coeff, m.a_coeff, default_alpha)


def solve_c1(m: AffineErrorModel, alpha: float, c2: float, default_c1: float) -> SolveResult:
    return _solve(m.delta + alpha * m.a_coeff + c2 * m.c_coeff, m.b_coeff, default_c1)


def solve_c2(m: AffineErrorModel, alpha: float, c1: float, default_c2: float) -> SolveResult:
    return _solve(m.delta + alpha * m.a_coeff + c1 * m.b_coeff, m.c_coeff, default_c2)


def _sequential(m: AffineErrorModel, d: Hyperparameters):
    a = solve_alpha(m, d.c1, d.c2, d.alpha)
    c1 = solve_c1(m, a.clamped, d.c2, d.c1)
    c2 = solve_c2(m, a.clamped, c1.clamped, d.c2)
    return a, c1, c2


def solve_sequential(m: AffineErrorModel, defaults: Hyperparameters) -> Hyperparameters:
    """Solve alpha, then c1, then c2, each stage seeing the clamped earlier ones."""
    a, c1, c2 = _sequential(m, defaults)
    return Hyperparameters(a.clamped, c1.clamped, c2.clamped)


def select_hyperparameters(
    strategy: SolveStrategy, m: AffineErrorModel, epoch: int = 1
) -> tuple[Hyperparameters, tuple[bool, bool, bool]]:
    """Weights for one particle update plus per-weight fallback flags.

    ``epoch`` is 1-based and only matters for the cyclic mode, which solves
    alpha on epoch 1, c1 on epoch 2, c2 on epoch 3, and so on.
    """
    d = strategy.defaults
    mode = strategy.mode
    if mode is SolveMode.FIXED:
        return d, (False, False, False)
    if mode is SolveMode.SEQUENTIAL:
        a, c1, c2 = _sequential(m, d)
        return (
            Hyperparameters(a.clamped, c1.clamped, c2.clamped),
            (a.fell_back, c1.fell_back, c2.fell_back),
        )
    if mode is SolveMode.CYCLIC:
        pivot = PIVOTS[(epoch - 1) % 3]
    else:
        pivot = mode.value
    weights = list(d.as_tuple())
    flags = [False, False, False]
    res = solve_pivot(m, pivot, d)
    i = PIVOTS.index(pivot)
    weights[i] = res.clamped
    flags[i] = res.fell_back
    return Hyperparameters(*weights), tuple(flags)


def grid_values(step: float) -> np.ndarray:
    if not 0.0 < step <= 0.1:
        raise ConfigurationError(f"grid step {step!r} must lie in (0, 0.1]")
    n = int(math.floor(1.0 / step + 1e-9))
    values = np.arange(n + 1, dtype=np.float64) * step
    values = values[values <= 1.0]
    if values[-1] < 1.0:
        values = np.append(values, 1.0)
    return values


def post_update_fitness(
    f: FitnessSpec,
    p: ParticleState,
    gbest: Sequence[float],
    r: RandomDraws,
    alpha,
    c1,
    c2,
):
    """Fitness after one update; weights may be arrays (broadcast)."""
    positions = [np.asarray(x, dtype=np.float64) for _, x in moved_components(p, gbest, alpha, c1, c2, r)]
    positions = np.broadcast_arrays(*positions)
    return evaluate_many(f, np.stack(positions, axis=-1))


def grid_oracle(
    f: FitnessSpec,
    p: ParticleState,
    gbest: Sequence[float],
    r: RandomDraws,
    pivot: str,
    fixed: Hyperparameters,
    step: float = 1e-3,
) -> float:
    """Brute-force constrained argmin of post-update fitness over one weight.

    Scans ``{0, step, 2*step, ..., 1}`` with the other two weights held at
    ``fixed``. Ties go to the smallest grid value.
    """
    if pivot not in PIVOTS:
        raise ConfigurationError(f"unknown pivot {pivot!r}")
    grid = grid_values(step)
    weights = dict(zip(PIVOTS, fixed.as_tuple()))
    weights[pivot] = grid
    values = post_update_fitness(f, p, gbest, r, weights["alpha"], weights["c1"], weights["c2"])
    return float(grid[int(np.argmin(values))])


def solve_pivot(m: AffineErrorModel, pivot: str, fixed: Hyperparameters) -> SolveResult:
    """Single-weight solve with the other two weights taken from ``fixed``."""
    if pivot == "alpha":
        return solve_alpha(m, fixed.c1, fixed.c2, fixed.alpha)
    if pivot == "c1":
        return solve_c1(m, fixed.alpha, fixed.c2, fixed.c1)
    if pivot == "c2":
        return solve_c2(m, fixed.alpha, fixed.c1, fixed.c2)
    raise ConfigurationError(f"unknown pivot {pivot!r}")
