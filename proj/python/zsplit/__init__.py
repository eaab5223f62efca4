"""Operator splitting schemes for linear evolution equations."""

from ._core import (
    ConfigError,
    DomainError,
    NumericRangeError,
    ShapeError,
    SpecError,
    UnsupportedOrderError,
    combined_step,
    commutator,
    estimate_order,
    exact_step,
    expm,
    iterative_step,
    lie_trotter_step,
    matrix_demo,
    matrix_demo_exact,
    multiphase,
    one_phase,
    reference_solution,
    run_convergence,
    strang_step,
    zassenhaus_corrections,
    zassenhaus_step,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "NumericRangeError",
    "ShapeError",
    "SpecError",
    "UnsupportedOrderError",
    "combined_step",
    "commutator",
    "estimate_order",
    "exact_step",
    "expm",
    "iterative_step",
    "lie_trotter_step",
    "matrix_demo",
    "matrix_demo_exact",
    "multiphase",
    "one_phase",
    "reference_solution",
    "run_convergence",
    "strang_step",
    "zassenhaus_corrections",
    "zassenhaus_step",
]
