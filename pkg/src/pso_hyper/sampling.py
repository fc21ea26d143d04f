"""Random particle states for property checks and the ``oracle`` command."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fitness import FitnessSpec, evaluate
from .state import Hyperparameters, ParticleState, RandomDraws, Vector


@dataclass(frozen=True)
class Case:
    particle: ParticleState
    gbest: Vector
    draws: RandomDraws
    weights: Hyperparameters


def random_case(rng: np.random.Generator, f: FitnessSpec) -> Case:
    """Position and both bests uniform on [0, 1), velocity on [-0.5, 0.5)."""
    d = f.dimension

    def vec(lo: float = 0.0, hi: float = 1.0) -> Vector:
        return tuple(float(v) for v in rng.uniform(lo, hi, d))

    position = vec()
    velocity = vec(-0.5, 0.5)
    pbest = vec()
    gbest = vec()
    draws = RandomDraws(vec(), vec())
    weights = Hyperparameters(*(float(v) for v in rng.random(3)))
    return Case(
        ParticleState(position, velocity, pbest, evaluate(f, pbest)), gbest, draws, weights
    )
