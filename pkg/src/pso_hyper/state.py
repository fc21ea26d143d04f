"""Value types shared by the swarm, fitness and solver modules."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigurationError

Vector = tuple[float, ...]


def _clamp01(value: float) -> float:
    return min(1.0, max(0.0, value))


@dataclass(frozen=True)
class Hyperparameters:
    """Inertia weight ``alpha``, cognitive weight ``c1`` and social weight ``c2``."""

    alpha: float
    c1: float
    c2: float

    def __post_init__(self) -> None:
        for name in ("alpha", "c1", "c2"):
            value = getattr(self, name)
            if not math.isfinite(value) or not 0.0 <= value <= 1.0:
                raise ConfigurationError(f"{name}={value!r} must lie in [0, 1]")

    @classmethod
    def clamped(cls, alpha: float, c1: float, c2: float) -> Hyperparameters:
        return cls(_clamp01(alpha), _clamp01(c1), _clamp01(c2))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.c1, self.c2)


@dataclass(frozen=True)
class RandomDraws:
    r1: Vector
    r2: Vector

    def __post_init__(self) -> None:
        if len(self.r1) != len(self.r2):
            raise ConfigurationError("r1 and r2 must have the same dimension")
        for v in self.r1 + self.r2:
            if not 0.0 <= v < 1.0:
                raise ConfigurationError(f"random draw {v!r} outside [0, 1)")


@dataclass(frozen=True)
class ParticleState:
    position: Vector
    velocity: Vector
    personal_best_position: Vector
    personal_best_fitness: float

    @property
    def dimension(self) -> int:
        return len(self.position)

    def to_personal_best(self) -> Vector:
        """Displacement from the current position to the personal best."""
        return tuple(b - x for b, x in zip(self.personal_best_position, self.position))

    def to_global_best(self, gbest: Vector) -> Vector:
        return tuple(g - x for g, x in zip(gbest, self.position))


@dataclass(frozen=True)
class SwarmState:
    particles: tuple[ParticleState, ...]
    global_best_position: Vector
    global_best_fitness: float
    epoch: int = 0

    @property
    def dimension(self) -> int:
        return len(self.global_best_position)
