"""Exact, Poissonized, and asymptotic expected generator counts.

The expected number of interior generators after n observations in dimension
d is an n-fold-free integral over the cube,

    I(d, n) = n_falling_d * Integral [prod(1-x_j)]^(d-1)
                            * [1 - prod(1-x_j)]^(n-d) dx,

and the expected total generator count follows by summing binomially over
coordinate subsets: G(d, n) = sum_k C(d, k) I(k, n), with I(0, n) nonzero
only at n = 0 (the origin).

Numerics: substituting t = prod(1 - x_j), whose density under independent
uniforms is (-ln t)^(d-1)/(d-1)!, collapses the cube integral to one
dimension; a further y = n*t rescaling keeps the integrand well conditioned
for n up to 1e9 (falling factorials and binomial kernels are evaluated in
log space).  Adaptive quadrature splits at the logarithmic endpoint
singularity and truncates the exponentially dead tail beyond y = 400.  The
raw d-dimensional Monte Carlo estimate is kept as an independent test oracle
(:func:`monte_carlo_interior`).

Contractual tolerances: 1e-9 absolute for expectation values.

The Poissonized companion replaces the binomial kernel by exp(-n t); its
asymptotic expansion in powers of 1/ln(n) has coefficients built from Gamma
derivatives, and the de-Poissonization gap is bounded by an explicit integral
(:func:`depoissonization_gap_bound`) that is O(n^-1 (ln n)^(d-1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, exp, factorial, lgamma, log, log1p
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .special import gamma_derivative

_Y_CAP = 400.0
_ABS_TOL = 1e-9


class NumericError(RuntimeError):
    """Quadrature failed to converge to the contractual tolerance."""


def _quad_piece(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    out = quad(f, a, b, epsabs=1e-13, epsrel=1e-12, limit=300, full_output=1)
    if len(out) > 3:
        raise NumericError(
            f"quadrature on [{a}, {b}] did not converge: {out[3]}"
        )
    return out[0], out[1]


def _split_quad(f: Callable[[float], float], upper: float) -> tuple[float, float]:
    """Integrate f over (0, upper], splitting at 1 for the log singularity."""
    if upper <= 1.0:
        return _quad_piece(f, 0.0, upper)
    v1, e1 = _quad_piece(f, 0.0, 1.0)
    v2, e2 = _quad_piece(f, 1.0, upper)
    return v1 + v2, e1 + e2


def _check_counts(d: int, n: int) -> None:
    if d < 1 or d != int(d):
        raise ValueError(f"dimension must be an integer >= 1, got {d!r}")
    if n < 0 or n != int(n):
        raise ValueError(f"count must be an integer >= 0, got {n!r}")


def interior_expected(d: int, n: int) -> float:
    """Expected number of interior generators after n observations.

    Zero whenever n < d (an interior generator needs d distinct records).
    Absolute tolerance 1e-9.
    """
    _check_counts(d, n)
    if n < d:
        return 0.0
    log_pref = sum(log(n - i) for i in range(d)) - d * log(n) - lgamma(d)
    pref = exp(log_pref)
    dm1 = d - 1
    n_minus_d = n - d
    ln_n = log(n)

    def f(y: float) -> float:
        if y <= 0.0:
            return 0.0
        lt = ln_n - log(y)
        if lt < 0.0:
            lt = 0.0
        base = dm1 * log(y)
        if n_minus_d:
            base += n_minus_d * log1p(-y / n)
        return exp(base) * lt**dm1

    value, err = _split_quad(f, min(float(n), _Y_CAP))
    if err * pref > _ABS_TOL:
        raise NumericError(
            f"interior_expected({d}, {n}): error estimate {err * pref:.3e} "
            f"exceeds {_ABS_TOL}"
        )
    return pref * value


def generators_expected(d: int, n: int) -> float:
    """Expected total generator count after n observations.

    Binomial mix of the interior counts of every coordinate-subset
    dimension; the 0-dimensional term contributes exactly the origin at
    n = 0.
    """
    _check_counts(d, n)
    total = 1.0 if n == 0 else 0.0
    for k in range(1, d + 1):
        if n >= k:
            total += comb(d, k) * interior_expected(k, n)
    return total


def poissonized_interior(d: int, n: int) -> float:
    """Poissonized interior-generator expectation (exponential kernel).

    Equals (1/(d-1)!) * Integral_0^n (ln n - ln y)^(d-1) y^(d-1) e^-y dy,
    to absolute tolerance 1e-9.
    """
    _check_counts(d, n)
    if n < 1:
        raise ValueError("poissonized_interior requires n >= 1")
    pref = exp(-lgamma(d))
    dm1 = d - 1
    ln_n = log(n)

    def f(y: float) -> float:
        if y <= 0.0:
            return 0.0
        lt = ln_n - log(y)
        if lt < 0.0:
            lt = 0.0
        return exp(dm1 * log(y) - y) * lt**dm1

    value, err = _split_quad(f, min(float(n), _Y_CAP))
    if err * pref > _ABS_TOL:
        raise NumericError(
            f"poissonized_interior({d}, {n}): error estimate {err * pref:.3e} "
            f"exceeds {_ABS_TOL}"
        )
    return pref * value


def poissonized_tilde(d: int, n: int) -> float:
    """Binomial-kernel companion of :func:`poissonized_interior`.

    n^d * Integral [prod(1-x)]^(d-1) [1-prod(1-x)]^n dx, evaluated through
    the exact identity with the interior expectation at time n + d.
    """
    _check_counts(d, n)
    if n < 1:
        raise ValueError("poissonized_tilde requires n >= 1")
    log_ratio = d * log(n) - sum(log(n + d - i) for i in range(d))
    return exp(log_ratio) * interior_expected(d, n + d)


def depoissonization_gap_bound(d: int, n: int) -> float:
    """Rigorous upper bound on poissonized_interior - poissonized_tilde.

    From (1-t)^n >= e^(-nt)(1 - n t^2): the gap is at most
    (1/((d-1)! n)) * Integral_0^n y^(d+1) (ln n - ln y)^(d-1) e^-y dy,
    which is O(n^-1 (ln n)^(d-1)).
    """
    _check_counts(d, n)
    if n < 1:
        raise ValueError("depoissonization_gap_bound requires n >= 1")
    pref = exp(-lgamma(d)) / n
    dp1 = d + 1
    dm1 = d - 1
    ln_n = log(n)

    def f(y: float) -> float:
        if y <= 0.0:
            return 0.0
        lt = ln_n - log(y)
        if lt < 0.0:
            lt = 0.0
        return exp(dp1 * log(y) - y) * lt**dm1

    value, _ = _split_quad(f, min(float(n), _Y_CAP))
    return pref * value


@dataclass(frozen=True)
class AsymptoticCoefficients:
    """Coefficients a_0..a_{d-1} of the (ln n)-power expansion of G(d, n)."""

    d: int
    a: tuple[float, ...]


def asymptotic_coefficients(d: int) -> AsymptoticCoefficients:
    """Expansion coefficients; a_0 = 1 exactly in every dimension.

    a_j = sum_{k=0}^{j} C(d, d-j+k) (-1)^k Gamma^(k)(d-j+k)
          / (k! (d-1-j)!).
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    coeffs = []
    for j in range(d):
        a_j = 0.0
        for k in range(j + 1):
            a_j += (
                comb(d, d - j + k)
                * (-1.0) ** k
                * gamma_derivative(k, d - j + k)
                / (factorial(k) * factorial(d - 1 - j))
            )
        coeffs.append(a_j)
    return AsymptoticCoefficients(d, tuple(coeffs))


def asymptotic_expected(d: int, n: int) -> float:
    """Expansion value sum_j a_j (ln n)^(d-1-j); error is O(n^-1 (ln n)^(d-1))."""
    _check_counts(d, n)
    if n < 2:
        raise ValueError("asymptotic_expected requires n >= 2")
    coeffs = asymptotic_coefficients(d).a
    ln = log(n)
    return sum(a * ln ** (d - 1 - j) for j, a in enumerate(coeffs))


def poissonized_expansion(d: int, n: int) -> float:
    """Expansion of the Poissonized interior count at fixed d.

    (ln n)^(d-1) * sum_j (-1)^j Gamma^(j)(d) / (j! (d-1-j)!) (ln n)^-j; the
    remainder decays like (n ln n)^(d-1) e^-n.
    """
    _check_counts(d, n)
    if n < 2:
        raise ValueError("poissonized_expansion requires n >= 2")
    ln = log(n)
    return sum(
        (-1.0) ** j
        * gamma_derivative(j, d)
        / (factorial(j) * factorial(d - 1 - j))
        * ln ** (d - 1 - j)
        for j in range(d)
    )


def monte_carlo_interior(
    d: int, n: int, samples: int, seed: int
) -> tuple[float, float]:
    """Raw d-dimensional Monte Carlo estimate of the interior expectation.

    Averages the integrand over uniform cube samples; returns (mean, standard
    error).  Independent of the one-dimensional quadrature route, so it
    serves as its oracle at desk scale.
    """
    _check_counts(d, n)
    if n < d:
        return 0.0, 0.0
    rng = np.random.default_rng(seed)
    log_pref = sum(log(n - i) for i in range(d))
    pref = exp(log_pref)
    x = rng.random((samples, d))
    t = np.prod(1.0 - x, axis=1)
    vals = pref * t ** (d - 1) * (1.0 - t) ** (n - d)
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / np.sqrt(samples))
    return mean, se


@dataclass(frozen=True)
class ExpectationRow:
    n: int
    interior_exact: float
    generators_exact: float
    interior_poissonized: float | None
    generators_asymptotic: float | None


@dataclass(frozen=True)
class ExpectationTable:
    """Expected generator counts for one dimension over a list of times."""

    d: int
    rows: tuple[ExpectationRow, ...]


def expectation_table(
    d: int,
    ns: Sequence[int],
    include_poissonized: bool = False,
    include_asymptotic: bool = False,
) -> ExpectationTable:
    rows = []
    for n in ns:
        rows.append(
            ExpectationRow(
                n=int(n),
                interior_exact=interior_expected(d, n),
                generators_exact=generators_expected(d, n),
                interior_poissonized=(
                    poissonized_interior(d, n)
                    if include_poissonized and n >= 1
                    else None
                ),
                generators_asymptotic=(
                    asymptotic_expected(d, n)
                    if include_asymptotic and n >= 2
                    else None
                ),
            )
        )
    return ExpectationTable(d, tuple(rows))
