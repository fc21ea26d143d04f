"""Particle swarm optimization with closed-form per-step hyperparameters."""

from .errors import ConfigurationError, NonFiniteFitnessError
from .fitness import (
    AffineErrorModel,
    FitnessKind,
    FitnessSpec,
    QuadratureSpec,
    affine_error_model,
    affv,
    affv_post_update,
    evaluate,
    signed_error,
)
from .solver import (
    SolveMode,
    SolveResult,
    SolveStrategy,
    grid_oracle,
    select_hyperparameters,
    solve_alpha,
    solve_c1,
    solve_c2,
    solve_sequential,
)
from .swarm import (
    Hyperparameters,
    ParticleState,
    RandomDraws,
    SwarmState,
    apply_weights,
    initialize_swarm,
    refresh_bests,
    update_velocity_position,
)

__all__ = [
    "AffineErrorModel",
    "ConfigurationError",
    "FitnessKind",
    "FitnessSpec",
    "Hyperparameters",
    "NonFiniteFitnessError",
    "ParticleState",
    "QuadratureSpec",
    "RandomDraws",
    "SolveMode",
    "SolveResult",
    "SolveStrategy",
    "SwarmState",
    "affine_error_model",
    "affv",
    "affv_post_update",
    "apply_weights",
    "evaluate",
    "grid_oracle",
    "initialize_swarm",
    "refresh_bests",
    "select_hyperparameters",
    "signed_error",
    "solve_alpha",
    "solve_c1",
    "solve_c2",
    "solve_sequential",
    "update_velocity_position",
]
