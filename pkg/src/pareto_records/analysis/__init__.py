"""Expected generator counts, deterministic bounds, and special functions."""

from .bounds import attainable_gammas_two_records, bounds, lower_bound_witness
from .expected import (
    AsymptoticCoefficients,
    ExpectationRow,
    ExpectationTable,
    NumericError,
    asymptotic_coefficients,
    asymptotic_expected,
    depoissonization_gap_bound,
    expectation_table,
    generators_expected,
    interior_expected,
    monte_carlo_interior,
    poissonized_expansion,
    poissonized_interior,
    poissonized_tilde,
)
from .special import (
    EULER_GAMMA,
    MAX_DERIVATIVE_ORDER,
    gamma_derivative,
    polygamma_at,
    zeta_constant,
)

__all__ = [
    "AsymptoticCoefficients",
    "EULER_GAMMA",
    "ExpectationRow",
    "ExpectationTable",
    "MAX_DERIVATIVE_ORDER",
    "NumericError",
    "asymptotic_coefficients",
    "asymptotic_expected",
    "attainable_gammas_two_records",
    "bounds",
    "depoissonization_gap_bound",
    "expectation_table",
    "gamma_derivative",
    "generators_expected",
    "interior_expected",
    "lower_bound_witness",
    "monte_carlo_interior",
    "poissonized_expansion",
    "poissonized_interior",
    "poissonized_tilde",
    "polygamma_at",
    "zeta_constant",
]
