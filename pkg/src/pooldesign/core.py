"""Exact cost model for Dorfman two-stage pooled testing.

A pool of k specimens costs one test if negative, k+1 tests if positive,
so the expected number of tests per person is E(k,p) = 1 - (1-p)^k + 1/k
for k >= 2 and E(1,p) = 1. The cost-minimizing pool size has a closed-form
characterization (Samuels' rule), and the regret of running a fixed pool
size k at prevalence p is E(k,p) minus the cost of the oracle-optimal size.
"""

from __future__ import annotations

import math

import numpy as np

# Pooling beats individual testing only for p <= P0 = 1 - (1/3)^(1/3).
Q0 = (1.0 / 3.0) ** (1.0 / 3.0)
P0 = 1.0 - Q0

__all__ = [
    "P0",
    "Q0",
    "expected_tests",
    "samuels_optimal_k",
    "optimal_expected_tests",
    "loss",
]


def _check_group_size(k) -> None:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise ValueError(f"group size must be a positive integer, got {k!r}")
    if k < 1:
        raise ValueError(f"group size must be >= 1, got {k}")


def _check_prevalence(p: float, *, allow_zero: bool) -> None:
    lo_ok = p >= 0.0 if allow_zero else p > 0.0
    if not (lo_ok and p < 1.0):
        lo = "[0, 1)" if allow_zero else "(0, 1)"
        raise ValueError(f"prevalence must lie in {lo}, got {p!r}")


def expected_tests(k: int, p: float) -> float:
    """Expected tests per person for pool size k at prevalence p."""
    _check_group_size(k)
    _check_prevalence(p, allow_zero=True)
    if k == 1:
        return 1.0
    # exp(k*log1p(-p)) keeps (1-p)^k accurate for k up to ~1e4
    return 1.0 - math.exp(k * math.log1p(-p)) + 1.0 / k


def samuels_optimal_k(p: float) -> int:
    """Cost-minimizing pool size at a known prevalence p.

    Individual testing (k=1) for p > P0. Otherwise the optimum is
    1 + floor(p^-1/2) or 2 + floor(p^-1/2); the fractional-part test
    resolves most cases and the remaining ones are settled by direct
    comparison, ties going to the smaller pool. The result is never 2.
    """
    _check_prevalence(p, allow_zero=False)
    if p > P0:
        return 1
    w = p ** -0.5
    i = math.floor(w)
    f = w - i
    if f < i / (2 * i + f):
        return i + 1
    e1 = expected_tests(i + 1, p)
    e2 = expected_tests(i + 2, p)
    return i + 1 if e1 <= e2 else i + 2


def optimal_expected_tests(p: float) -> float:
    """Expected tests per person under the oracle-optimal pool size."""
    return expected_tests(samuels_optimal_k(p), p)


def loss(k: int, p: float) -> float:
    """Regret of pool size k at prevalence p: E(k,p) - E(k*(p),p).

    At p = 0 the value is defined by its limit, 1/k for k >= 2 and 1
    for k = 1, which closes the domain for worst-case searches.
    """
    _check_group_size(k)
    _check_prevalence(p, allow_zero=True)
    if p == 0.0:
        return 1.0 if k == 1 else 1.0 / k
    return expected_tests(k, p) - optimal_expected_tests(p)


# -- vectorized internals (shared by the grid searches and property tests) --


def _expected_tests_vec(k, p):
    """E(k,p) on arrays; k may be a scalar or an array broadcastable to p."""
    k = np.asarray(k, dtype=float)
    p = np.asarray(p, dtype=float)
    e = 1.0 - np.exp(k * np.log1p(-p)) + 1.0 / k
    return np.where(k == 1.0, 1.0, e)


def _samuels_k_vec(p):
    """Vectorized Samuels rule; p is an array with entries in (0,1)."""
    p = np.asarray(p, dtype=float)
    k = np.ones(p.shape, dtype=np.int64)
    pool = p <= P0
    if np.any(pool):
        pm = p[pool]
        w = pm ** -0.5
        i = np.floor(w)
        f = w - i
        short = f < i / (2 * i + f)
        e1 = _expected_tests_vec(i + 1, pm)
        e2 = _expected_tests_vec(i + 2, pm)
        k[pool] = np.where(short | (e1 <= e2), i + 1, i + 2).astype(np.int64)
    return k


def _optimal_tests_vec(p):
    p = np.asarray(p, dtype=float)
    return _expected_tests_vec(_samuels_k_vec(p), p)


def _loss_vec(k: int, p):
    """Regret of a fixed k over an array of prevalences (0 allowed)."""
    p = np.asarray(p, dtype=float)
    out = np.empty(p.shape)
    zero = p == 0.0
    if zero.any():
        out[zero] = 1.0 if k == 1 else 1.0 / k
    nz = ~zero
    if nz.any():
        pnz = p[nz]
        out[nz] = _expected_tests_vec(k, pnz) - _optimal_tests_vec(pnz)
    return out
