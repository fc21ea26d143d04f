"""Swarm initialization, the velocity/position update and best tracking."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, NonFiniteFitnessError
from .fitness import FitnessSpec, evaluate
from .state import Hyperparameters, ParticleState, RandomDraws, SwarmState

VELOCITY_RANGE = (-0.5, 0.5)


def initialize_swarm(
    n_particles: int,
    dimension: int,
    fitness: FitnessSpec,
    seed: int | np.random.Generator,
) -> SwarmState:
    """Uniform positions on [0, 1)^d, uniform velocities on [-0.5, 0.5)^d.

    ``seed`` may also be a Generator, in which case the caller keeps drawing
    from it after initialization.
    """
    if n_particles < 1:
        raise ConfigurationError("n_particles must be >= 1")
    if dimension != fitness.dimension:
        raise ConfigurationError(
            f"{fitness.kind.name} needs dimension {fitness.dimension}, got {dimension}"
        )
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    positions = rng.random((n_particles, dimension))
    velocities = rng.uniform(*VELOCITY_RANGE, size=(n_particles, dimension))
    particles = []
    for i in range(n_particles):
        pos = tuple(float(v) for v in positions[i])
        value = evaluate(fitness, pos)
        if not math.isfinite(value):
            raise NonFiniteFitnessError(0, i, value)
        particles.append(
            ParticleState(pos, tuple(float(v) for v in velocities[i]), pos, value)
        )
    best = _best_index(particles)
    return SwarmState(
        tuple(particles),
        particles[best].personal_best_position,
        particles[best].personal_best_fitness,
        0,
    )


def draw_random(rng: np.random.Generator, dimension: int) -> RandomDraws:
    r1 = tuple(float(v) for v in rng.random(dimension))
    r2 = tuple(float(v) for v in rng.random(dimension))
    return RandomDraws(r1, r2)


def moved_components(p: ParticleState, gbest: Sequence[float], alpha, c1, c2, r: RandomDraws):
    """Per-dimension ``(new_velocity, new_position)`` pairs.

    The weights may be numpy arrays, in which case every component broadcasts
    over them; the grid oracle relies on this to sweep one weight at once.
    """
    if not (len(gbest) == len(r.r1) == p.dimension):
        raise ConfigurationError("dimension mismatch in particle update")
    out = []
    for k in range(p.dimension):
        x = p.position[k]
        v = (
            alpha * p.velocity[k]
            + r.r1[k] * c1 * (p.personal_best_position[k] - x)
            + r.r2[k] * c2 * (gbest[k] - x)
        )
        out.append((v, x + v))
    return out


def apply_weights(
    p: ParticleState,
    gbest: Sequence[float],
    alpha: float,
    c1: float,
    c2: float,
    r: RandomDraws,
) -> ParticleState:
    """Velocity and position update for arbitrary (possibly unclamped) weights."""
    parts = moved_components(p, gbest, alpha, c1, c2, r)
    return ParticleState(
        tuple(float(x) for _, x in parts),
        tuple(float(v) for v, _ in parts),
        p.personal_best_position,
        p.personal_best_fitness,
    )


def update_velocity_position(
    p: ParticleState, gbest: Sequence[float], h: Hyperparameters, r: RandomDraws
) -> ParticleState:
    return apply_weights(p, gbest, h.alpha, h.c1, h.c2, r)


def _best_index(particles: Sequence[ParticleState]) -> int:
    best = 0
    for i, p in enumerate(particles):
        # strict comparison keeps the lowest index on ties
        if p.personal_best_fitness < particles[best].personal_best_fitness:
            best = i
    return best


def refresh_bests(s: SwarmState, fitness: FitnessSpec) -> SwarmState:
    """Re-evaluate every particle, then update personal and global bests.

    The returned state's epoch is ``s.epoch``; advancing the epoch counter is
    the caller's job.
    """
    particles = []
    for i, p in enumerate(s.particles):
        value = evaluate(fitness, p.position)
        if not math.isfinite(value):
            raise NonFiniteFitnessError(s.epoch, i, value)
        if value < p.personal_best_fitness:
            p = ParticleState(p.position, p.velocity, p.position, value)
        particles.append(p)
    best = _best_index(particles)
    return SwarmState(
        tuple(particles),
        particles[best].personal_best_position,
        particles[best].personal_best_fitness,
        s.epoch,
    )
