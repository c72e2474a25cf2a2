"""Minimax pool size: minimize the worst-case regret over prevalence.

The worst case for a fixed pool size k is searched over (0, min(U, P0)];
nothing is lost by truncating at P0, where individual testing takes over.
The shipped solver is piecewise analytic: on the prevalence segment where
the oracle size is m (< k), the regret equals q^m - q^k + 1/k - 1/m in
q = 1-p, with an interior stationary point at q = (m/k)^(1/(k-m)). A plain
grid search over p mirrors the heuristic procedure and serves as the
independent oracle in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import ranges
from .core import P0, _check_group_size, _expected_tests_vec, _optimal_tests_vec

__all__ = [
    "LossPoint",
    "MinimaxResult",
    "sup_loss_analytic",
    "sup_loss_grid",
    "minimax_group_size",
]


@dataclass(frozen=True)
class LossPoint:
    """Worst-case prevalence and regret for one pool size.

    p_star = 0 encodes the p->0 limit, where the regret tends to 1/k
    (1 for k = 1).
    """

    k: int
    p_star: float
    sup_loss: float


@dataclass(frozen=True)
class MinimaxResult:
    k_minimax: int
    upper_bound: float
    worst_point: LossPoint
    method: str


def _check_upper_bound(U: float) -> None:
    if not 0.0 < U <= 1.0:
        raise ValueError(f"upper bound must lie in (0, 1], got {U!r}")


def sup_loss_analytic(k: int, U: float = 1.0) -> LossPoint:
    """Supremum of the regret of pool size k over p in (0, min(U, P0)].

    Every oracle segment with m < k is enumerated; candidates are the
    stationary point clamped to the segment plus both segment endpoints,
    all compared against the p->0 limit. Segments with m >= k never beat
    the limit (their regret is below 1/k). Ties go to the smallest p.
    """
    _check_group_size(k)
    _check_upper_bound(U)
    hi = min(U, P0)
    limit = 1.0 if k == 1 else 1.0 / k
    if k >= 4:
        roots = ranges._roots_through(k - 1)  # q roots for sizes 2..k-1
        m = np.arange(3, k)
        seg_lo = roots[:-1]  # root for m-1
        seg_hi = roots[1:]  # root for m
        q_floor = 1.0 - hi  # domain in q is [1-hi, 1)
        keep = seg_hi > q_floor
        if keep.any():
            m = m[keep]
            lo = np.maximum(seg_lo[keep], q_floor)
            hiq = seg_hi[keep]
            q_stat = (m / k) ** (1.0 / (k - m))
            qs = np.concatenate([np.clip(q_stat, lo, hiq), lo, hiq])
            mm = np.concatenate([m, m, m])
            vals = qs ** mm - qs ** k + 1.0 / k - 1.0 / mm
            best = vals.max()
            if best > limit:
                q_best = qs[vals == best].max()  # highest q = lowest p
                return LossPoint(k, 1.0 - float(q_best), float(best))
    return LossPoint(k, 0.0, limit)


@lru_cache(maxsize=16)
def _grid_base(U: float, step: float):
    hi = min(U, P0)
    n = int(math.floor(hi / step + 1e-12))
    p = np.arange(n + 1) * step
    if p[-1] < hi:
        p = np.append(p, hi)  # the right endpoint is part of the domain
    opt = _optimal_tests_vec(p[1:])
    p.flags.writeable = False
    opt.flags.writeable = False
    return p, opt


def sup_loss_grid(k: int, U: float = 1.0, step: float = 1e-6) -> LossPoint:
    """Grid-search counterpart of sup_loss_analytic (test oracle).

    Evaluates the regret on p in {0, step, 2*step, ...} up to min(U, P0)
    (endpoint included) and returns the first maximizing grid point.
    """
    _check_group_size(k)
    _check_upper_bound(U)
    if not 0.0 < step <= 1e-3:
        raise ValueError(f"step must lie in (0, 1e-3], got {step!r}")
    p, opt = _grid_base(U, step)
    losses = np.empty(p.shape)
    losses[0] = 1.0 if k == 1 else 1.0 / k
    losses[1:] = _expected_tests_vec(k, p[1:]) - opt
    i = int(np.argmax(losses))  # first occurrence: lowest p on ties
    return LossPoint(k, float(p[i]), float(losses[i]))


def minimax_group_size(
    U: float = 1.0,
    method: str = "analytic",
    *,
    grid_step: float = 1e-6,
    patience: int = 10,
    k_cap: int = 100_000,
) -> MinimaxResult:
    """Pool size minimizing the worst-case regret over (0, min(U, P0)].

    Scans k upward and stops once the supremum has strictly increased for
    `patience` consecutive sizes (the worst-case curve is unimodal in k);
    ties in the minimum go to the smaller pool size.
    """
    _check_upper_bound(U)
    if method not in ("analytic", "grid"):
        raise ValueError(f"method must be 'analytic' or 'grid', got {method!r}")
    if patience < 1:
        raise ValueError("patience must be >= 1")
    if method == "grid":
        # small windows keep at least 1e5 grid points
        step = min(grid_step, U / 1e5)
    best: LossPoint | None = None
    prev = math.inf
    rising = 0
    k = 0
    while True:
        k += 1
        pt = (
            sup_loss_analytic(k, U)
            if method == "analytic"
            else sup_loss_grid(k, U, step)
        )
        if best is None or pt.sup_loss < best.sup_loss:
            best = pt
        rising = rising + 1 if pt.sup_loss > prev else 0
        prev = pt.sup_loss
        if rising >= patience:
            break
        if k >= k_cap:
            raise RuntimeError(
                f"worst-case scan reached k={k_cap} without bracketing a minimum"
            )
    return MinimaxResult(best.k, U, best, method)
