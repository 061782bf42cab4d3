"""Interior-layer asymptotics and source reconstruction from noisy snapshots."""

from ._core import (
    AssumptionViolation,
    ConfigError,
    Error,
    Expr,
    Grid2D,
    NumericalError,
    ProblemSpec,
    Side,
    add_noise,
    assumptions_hold,
    eval_phi,
    eval_u1,
    front_at,
    layer_width,
    load_problem,
    phi_field,
    preset,
    run_pipeline,
)

__all__ = [
    "AssumptionViolation",
    "ConfigError",
    "Error",
    "Expr",
    "Grid2D",
    "NumericalError",
    "ProblemSpec",
    "Side",
    "add_noise",
    "assumptions_hold",
    "eval_phi",
    "eval_u1",
    "front_at",
    "layer_width",
    "load_problem",
    "phi_field",
    "preset",
    "run_pipeline",
]
