"""Numerical toolkit for the binary skew-symmetric broadcast channel.

Finite-alphabet information primitives, exhaustive verification of the
sum-rate inequality over the sixteen boolean couplings of the auxiliary
pair, auxiliary-cardinality reductions, and the inner/outer bound sum-rate
evaluations with their achieving distributions.
"""

from ._core import (
    Envelope,
    and_first_order_residuals,
    and_or_bijection,
    and_second_order_form,
    binary_entropy,
    bssc_channels,
    canonical_class,
    conditional_mi,
    difference_curve,
    entropy,
    gap_identity,
    hajek_construct,
    km_sum_rate,
    lhs_closed_form_and,
    lhs_closed_form_or,
    lower_convex_envelope,
    marton_sum_rate,
    max_difference,
    maximize_lhs,
    mutual_information,
    objective,
    outer_sum_rate,
    rate_points,
    reduce_support,
    single_user_capacity,
    stationary_family,
    verify_grid,
    xor_directional_derivative,
)

__all__ = [
    "Envelope",
    "and_first_order_residuals",
    "and_or_bijection",
    "and_second_order_form",
    "binary_entropy",
    "bssc_channels",
    "canonical_class",
    "conditional_mi",
    "difference_curve",
    "entropy",
    "gap_identity",
    "hajek_construct",
    "km_sum_rate",
    "lhs_closed_form_and",
    "lhs_closed_form_or",
    "lower_convex_envelope",
    "marton_sum_rate",
    "max_difference",
    "maximize_lhs",
    "mutual_information",
    "objective",
    "outer_sum_rate",
    "rate_points",
    "reduce_support",
    "single_user_capacity",
    "stationary_family",
    "verify_grid",
    "xor_directional_derivative",
]

__version__ = "1.0.0"
