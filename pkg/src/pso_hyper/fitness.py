"""The three squared-error fitness functions and their average over the unit box."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConfigurationError
from .state import Hyperparameters, ParticleState, RandomDraws


class FitnessKind(str, enum.Enum):
    F1 = "f1"
    F2 = "f2"
    F3 = "f3"


@dataclass(frozen=True)
class FitnessSpec:
    """Which fitness to minimize.

    ``F1(w) = (w - 0.5)**2``, ``F2(w, b) = (w + b)**2`` and the single-sample
    regression loss ``F3(w, b) = (w*x + b - y)**2``. ``x`` and ``y`` are only
    read for F3.
    """

    kind: FitnessKind
    x: float = 0.5
    y: float = 0.25

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", FitnessKind(self.kind))
        if self.kind is FitnessKind.F3 and not (
            math.isfinite(self.x) and math.isfinite(self.y)
        ):
            raise ConfigurationError("F3 needs finite x and y")

    @property
    def dimension(self) -> int:
        return 1 if self.kind is FitnessKind.F1 else 2


@dataclass(frozen=True)
class AffineErrorModel:
    """Post-update signed error as ``delta + alpha*a + c1*b + c2*c``."""

    delta: float
    a_coeff: float
    b_coeff: float
    c_coeff: float

    def residual(self, alpha: float, c1: float, c2: float) -> float:
        return self.delta + alpha * self.a_coeff + c1 * self.b_coeff + c2 * self.c_coeff


@dataclass(frozen=True)
class QuadratureSpec:
    points_per_dim: int = 1024
    domain: tuple[float, float] = field(default=(0.0, 1.0), init=False)

    def __post_init__(self) -> None:
        if self.points_per_dim < 1:
            raise ConfigurationError("points_per_dim must be >= 1")

    def nodes(self) -> np.ndarray:
        n = self.points_per_dim
        return (np.arange(n, dtype=np.float64) + 0.5) / n


def _check_dimension(f: FitnessSpec, position: Sequence[float]) -> None:
    if len(position) != f.dimension:
        raise ConfigurationError(
            f"{f.kind.name} expects dimension {f.dimension}, got {len(position)}"
        )


def _signed(f: FitnessSpec, w, b=None):
    # works on floats and on broadcast numpy arrays alike
    if f.kind is FitnessKind.F1:
        return w - 0.5
    if f.kind is FitnessKind.F2:
        return w + b
    return w * f.x + b - f.y


def signed_error(f: FitnessSpec, position: Sequence[float]) -> float:
    _check_dimension(f, position)
    return _signed(f, *position)


def evaluate(f: FitnessSpec, position: Sequence[float]) -> float:
    delta = signed_error(f, position)
    return delta * delta


def evaluate_many(f: FitnessSpec, positions: np.ndarray) -> np.ndarray:
    """Vectorized ``evaluate`` over the last axis of ``positions``."""
    positions = np.asarray(positions, dtype=np.float64)
    if positions.shape[-1] != f.dimension:
        raise ConfigurationError(
            f"{f.kind.name} expects dimension {f.dimension}, got {positions.shape[-1]}"
        )
    delta = _signed(f, *np.moveaxis(positions, -1, 0))
    return delta * delta


def affine_error_model(
    f: FitnessSpec, p: ParticleState, gbest: Sequence[float], r: RandomDraws
) -> AffineErrorModel:
    _check_dimension(f, p.position)
    _check_dimension(f, gbest)
    op = p.to_personal_best()
    og = p.to_global_best(tuple(gbest))
    v = p.velocity
    if f.kind is FitnessKind.F1:
        a = v[0]
        b = r.r1[0] * op[0]
        c = r.r2[0] * og[0]
    else:
        # the w-component is scaled by x for F3 and by 1 for F2
        x = f.x if f.kind is FitnessKind.F3 else 1.0
        a = v[0] * x + v[1]
        b = r.r1[0] * op[0] * x + r.r1[1] * op[1]
        c = r.r2[0] * og[0] * x + r.r2[1] * og[1]
    return AffineErrorModel(signed_error(f, p.position), a, b, c)


def _grid(f: FitnessSpec, q: QuadratureSpec) -> list[np.ndarray]:
    nodes = q.nodes()
    if f.dimension == 1:
        return [nodes]
    w, b = np.meshgrid(nodes, nodes, indexing="ij")
    return [w, b]


def _mean_over_grid(f: FitnessSpec, coords: list[np.ndarray]) -> float:
    delta = _signed(f, *coords)
    return float(np.mean(delta * delta))


def affv(f: FitnessSpec, q: QuadratureSpec | None = None) -> float:
    """Mean fitness with every variable uniform on [0, 1], by the midpoint rule."""
    q = q or QuadratureSpec()
    return _mean_over_grid(f, _grid(f, q))


def affv_post_update(
    f: FitnessSpec,
    p: ParticleState,
    gbest: Sequence[float],
    r: RandomDraws,
    h: Hyperparameters,
    q: QuadratureSpec | None = None,
) -> float:
    """Average fitness after one update, integrating the starting position.

    Velocity, the displacements to both bests and the random draws are held
    at their values in ``p``; only the starting position varies over the
    unit box, so the update is a constant shift of every grid node.
    """
    q = q or QuadratureSpec()
    _check_dimension(f, p.position)
    op = p.to_personal_best()
    og = p.to_global_best(tuple(gbest))
    coords = _grid(f, q)
    shifted = [
        node + (h.alpha * p.velocity[k] + r.r1[k] * h.c1 * op[k] + r.r2[k] * h.c2 * og[k])
        for k, node in enumerate(coords)
    ]
    return _mean_over_grid(f, shifted)
