"""Classical n-cbit simulation of two spin-s singlet correlations, with an exact quantum oracle."""

from ._core import (
    chi_squared_uniform,
    correlation_closed_form,
    correlation_matrix,
    eigendecompose_hermitian,
    estimate,
    joint_distribution,
    parse_spin,
    run_round,
    singlet,
    spin_operators,
    sweep,
    total_variation_distance,
    verify,
)

__all__ = [
    "chi_squared_uniform",
    "correlation_closed_form",
    "correlation_matrix",
    "eigendecompose_hermitian",
    "estimate",
    "joint_distribution",
    "parse_spin",
    "run_round",
    "singlet",
    "spin_operators",
    "sweep",
    "total_variation_distance",
    "verify",
]
