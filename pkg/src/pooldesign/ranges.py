"""Prevalence intervals on which a fixed pool size is optimal.

The breakpoints between optimality regions are, in q = 1 - p, the larger
real roots of q^k (1-q) = 1/(k(k+1)). Pool size l >= 3 is optimal exactly
between the roots for l and l-1 (with the k=2 root defined as (1/3)^(1/3));
k = 2 is never optimal and k = 1 owns everything above P0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import P0, Q0, _check_group_size

__all__ = ["OptimalityRange", "delta", "larger_root", "optimality_range"]


@dataclass(frozen=True)
class OptimalityRange:
    """Closed interval [p_low, p_high] on which pool size k is optimal.

    Endpoints are shared with the adjacent pool sizes: at a breakpoint
    both neighbors achieve the same cost.
    """

    k: int
    p_low: float
    p_high: float


def delta(k: int, q: float) -> float:
    """Cost gap E(k+1) - E(k) as a function of q = 1-p: q^k(1-q) - 1/(k(k+1))."""
    _check_group_size(k)
    if k < 3:
        raise ValueError(f"delta is defined for k >= 3, got {k}")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q!r}")
    return q ** k * (1.0 - q) - 1.0 / (k * (k + 1))


# Root buffer, grown on demand; _roots[i] holds the root for pool size i+2.
_roots = np.empty(64)
_roots[0] = Q0
_nroots = 1


def _bisect_larger_root(k: int) -> float:
    # The bracket (k/(k+1), 1) is valid: delta is positive at its interior
    # maximum q = k/(k+1) and negative at 1. Bisect to the last float.
    lo = k / (k + 1)
    hi = 1.0
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if delta(k, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return lo if abs(delta(k, lo)) <= abs(delta(k, hi)) else hi


def larger_root(k: int) -> float:
    """Larger root of q^k(1-q) = 1/(k(k+1)); the k=2 value is (1/3)^(1/3)."""
    _check_group_size(k)
    if k < 2:
        raise ValueError(f"roots are defined for k >= 2, got {k}")
    global _roots, _nroots
    while _nroots < k - 1:
        r = _bisect_larger_root(_nroots + 2)
        if _nroots >= len(_roots):
            _roots = np.concatenate([_roots, np.empty(len(_roots))])
        _roots[_nroots] = r
        _nroots += 1
    return float(_roots[k - 2])


def _roots_through(k: int):
    """Read-only view of the roots for pool sizes 2..k (ascending)."""
    larger_root(k)
    return _roots[: k - 1]


def optimality_range(k: int) -> OptimalityRange:
    """Prevalence interval on which pool size k is the oracle choice."""
    _check_group_size(k)
    if k == 2:
        raise ValueError("pool size 2 is never optimal at any prevalence")
    if k == 1:
        return OptimalityRange(1, P0, 1.0)
    return OptimalityRange(k, 1.0 - larger_root(k), 1.0 - larger_root(k - 1))
