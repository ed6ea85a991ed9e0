"""Python access to the telegraph interface lab."""

from ._core import (
    CONVERGENCE_HEADER,
    ConfigError,
    Grid,
    InterfaceParams,
    SkewParams,
    ValidationError,
    det_M,
    eigen_weights,
    evolve,
    gamma_kernel,
    gaussian_cells,
    minimal_bm_kernel,
    run_convergence,
    simulate_particle,
    validate_kernels,
)

__all__ = [
    "CONVERGENCE_HEADER",
    "ConfigError",
    "Grid",
    "InterfaceParams",
    "SkewParams",
    "ValidationError",
    "det_M",
    "eigen_weights",
    "evolve",
    "gamma_kernel",
    "gaussian_cells",
    "minimal_bm_kernel",
    "run_convergence",
    "simulate_particle",
    "validate_kernels",
]
