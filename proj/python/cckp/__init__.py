"""Chance-constrained knapsack solvers (GSEMO variants, exact oracle, experiment sweeps)."""

from ._core import (
    ConfigError,
    Instance,
    ParseError,
    ResourceError,
    bound_schedule,
    brute_force_best,
    cheb_estimate,
    deterministic_optimum,
    generate,
    hoef_estimate,
    optimum_for_bounds,
    profit_estimate,
    run,
    sweep,
)

__all__ = [
    "ConfigError",
    "Instance",
    "ParseError",
    "ResourceError",
    "bound_schedule",
    "brute_force_best",
    "cheb_estimate",
    "deterministic_optimum",
    "generate",
    "hoef_estimate",
    "optimum_for_bounds",
    "profit_estimate",
    "run",
    "sweep",
]
