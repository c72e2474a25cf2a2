"""Bayesian pool-size selection under truncated beta priors on (0, U].

The prior density is p^(a-1)(1-p)^(b-1) / Z on (0, U]; (1,1) is the
uniform prior (closed-form posterior cost, no quadrature needed) and
(1/2, 1/2) is the Jeffreys prior, whose normalizer is 2*arcsin(sqrt(U)).
The prior-mean cost of a pool size is integrated after the substitution
p = U*sin^2(theta), which removes the endpoint singularities of the
density before adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate, special

from .core import _check_group_size

__all__ = [
    "PriorSpec",
    "BayesResult",
    "QuadratureError",
    "jeffreys_constant",
    "expected_tests_uniform",
    "uniform_optimal_k",
    "expected_tests_under_prior",
    "bayes_optimal_k",
]


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge within its budget."""

    def __init__(self, message: str, error_estimate: float = math.nan):
        super().__init__(message)
        self.error_estimate = error_estimate


def _check_upper_bound(U: float) -> None:
    if not 0.0 < U <= 1.0:
        raise ValueError(f"upper bound must lie in (0, 1], got {U!r}")


@dataclass(frozen=True)
class PriorSpec:
    """Beta(a, b) prior truncated and renormalized to (0, upper]."""

    a: float
    b: float
    upper: float = 1.0

    def __post_init__(self):
        if not (self.a > 0.0 and self.b > 0.0):
            raise ValueError(f"beta shapes must be positive, got a={self.a!r}, b={self.b!r}")
        _check_upper_bound(self.upper)

    @classmethod
    def uniform(cls, upper: float = 1.0) -> "PriorSpec":
        return cls(1.0, 1.0, upper)

    @classmethod
    def jeffreys(cls, upper: float = 1.0) -> "PriorSpec":
        return cls(0.5, 0.5, upper)


@dataclass(frozen=True)
class BayesResult:
    k_opt: int
    expected_tests_at_opt: float
    prior: PriorSpec


def jeffreys_constant(U: float) -> float:
    """Mass of (p(1-p))^(-1/2) on (0, U]: 2*arcsin(sqrt(U))."""
    _check_upper_bound(U)
    return 2.0 * math.asin(math.sqrt(U))


def expected_tests_uniform(k: int, U: float) -> float:
    """Prior-mean tests per person under Uniform(0, U], in closed form."""
    _check_group_size(k)
    _check_upper_bound(U)
    if k == 1:
        return 1.0
    # (1-U)^(k+1) via log1p for accuracy; exactly 0 at U = 1
    tail = 0.0 if U == 1.0 else math.exp((k + 1) * math.log1p(-U))
    return 1.0 + 1.0 / k + (tail - 1.0) / (U * (k + 1))


def _normalizer(a: float, b: float, U: float) -> float:
    # incomplete beta mass of the untruncated density on (0, U]
    return float(special.betainc(a, b, U) * special.beta(a, b))


def _weighted_cost_mass(k, a, b, U, tol, budget):
    """Integral of E(k,p) * p^(a-1)(1-p)^(b-1) over (0, U].

    Uses p = U*sin^2(theta); in theta the integrand is
    2 U^a sin(theta)^(2a-1) cos(theta) (1 - U sin^2)^(b-1) E(k, p),
    smooth for the uniform and Jeffreys shapes. 1 - U sin^2 is computed
    as (1-U) + U cos^2 to stay exact near theta = pi/2.
    """
    two_a = 2.0 * a - 1.0
    b_m1 = b - 1.0
    inv_k = 0.0 if k == 1 else 1.0 / k

    def g(theta: float) -> float:
        s = math.sin(theta)
        c = math.cos(theta)
        q = (1.0 - U) + U * c * c  # 1 - p
        cost = 1.0 if k == 1 else 1.0 - q ** k + inv_k
        return 2.0 * U ** a * s ** two_a * c * q ** b_m1 * cost

    out = integrate.quad(
        g, 0.0, 0.5 * math.pi, epsabs=tol, epsrel=tol, limit=budget, full_output=1
    )
    if len(out) > 3:
        raise QuadratureError(
            f"quadrature did not converge for k={k}, prior=({a}, {b}, {U}): "
            f"{out[3]} (error estimate {out[1]:.3e})",
            out[1],
        )
    return out[0]


def expected_tests_under_prior(
    k: int, prior: PriorSpec, *, quad_tol: float = 1e-10, budget: int = 10_000
) -> float:
    """Prior-mean tests per person for pool size k under a truncated beta prior."""
    _check_group_size(k)
    mass = _weighted_cost_mass(k, prior.a, prior.b, prior.upper, quad_tol, budget)
    return mass / _normalizer(prior.a, prior.b, prior.upper)


def _scan_for_minimum(cost, patience: int, k_cap: int):
    """Smallest k minimizing cost(k); stops after `patience` sizes without
    a strict improvement (handles costs that flatten out without rising)."""
    best_k = None
    best = math.inf
    stale = 0
    k = 0
    while True:
        k += 1
        e = cost(k)
        if e < best:
            best_k, best = k, e
            stale = 0
        else:
            stale += 1
        if stale >= patience:
            return best_k, best
        if k >= k_cap:
            raise RuntimeError(
                f"pool-size scan reached k={k_cap} without bracketing a minimum"
            )


def bayes_optimal_k(
    prior: PriorSpec,
    *,
    quad_tol: float = 1e-10,
    patience: int = 10,
    k_cap: int = 100_000,
) -> BayesResult:
    """Pool size minimizing the prior-mean cost; ties go to the smaller k."""
    if patience < 1:
        raise ValueError("patience must be >= 1")
    k, e = _scan_for_minimum(
        lambda k: expected_tests_under_prior(k, prior, quad_tol=quad_tol),
        patience,
        k_cap,
    )
    return BayesResult(k, e, prior)


def uniform_optimal_k(U: float, *, patience: int = 10, k_cap: int = 100_000) -> int:
    """Pool size minimizing the Uniform(0, U] prior-mean cost (closed form)."""
    _check_upper_bound(U)
    k, _ = _scan_for_minimum(lambda k: expected_tests_uniform(k, U), patience, k_cap)
    return k
