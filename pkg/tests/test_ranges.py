"""Tests for the optimality breakpoints and per-size prevalence intervals."""

import numpy as np
import pytest
from scipy import optimize

from pooldesign import P0, Q0, delta, larger_root, optimality_range, samuels_optimal_k


class TestDelta:
    def test_at_one(self):
        assert delta(3, 1.0) == pytest.approx(-1.0 / 12.0, abs=1e-15)

    def test_at_interior_maximum(self):
        assert delta(3, 0.75) == pytest.approx(27.0 / 256.0 - 1.0 / 12.0, abs=1e-15)
        assert delta(3, 0.75) > 0.0

    def test_near_the_eighth_root(self):
        assert delta(8, 0.9843) == pytest.approx(0.0, abs=1e-4)

    @pytest.mark.parametrize("args", [(2, 0.5), (3, -0.1), (3, 1.1), (0, 0.5)])
    def test_rejects_bad_inputs(self, args):
        with pytest.raises(ValueError):
            delta(*args)


class TestLargerRoot:
    def test_base_case_is_the_cube_root(self):
        assert larger_root(2) == Q0

    def test_printed_examples(self):
        # the 4-decimal reference digits truncate 0.0157726 and 0.0206682
        assert larger_root(8) == pytest.approx(1.0 - 0.0157726, abs=1e-7)
        assert larger_root(7) == pytest.approx(1.0 - 0.0206682, abs=1e-7)

    def test_agrees_with_brentq(self):
        for k in (3, 10, 57, 321):
            want = optimize.brentq(
                lambda q: delta(k, q), k / (k + 1), 1.0, xtol=1e-15, rtol=1e-15
            )
            assert larger_root(k) == pytest.approx(want, abs=1e-13)

    def test_residuals(self):
        for k in range(3, 501):
            assert abs(delta(k, larger_root(k))) <= 1e-12

    def test_strictly_increasing(self):
        roots = np.array([larger_root(k) for k in range(2, 501)])
        assert np.all(np.diff(roots) > 0.0)

    def test_rejects_small_k(self):
        with pytest.raises(ValueError):
            larger_root(1)


class TestOptimalityRange:
    def test_pool_of_eight(self):
        rng = optimality_range(8)
        assert rng.p_low == pytest.approx(0.0157726, abs=1e-7)
        assert rng.p_high == pytest.approx(0.0206682, abs=1e-7)

    def test_individual_testing_regime(self):
        rng = optimality_range(1)
        assert (rng.p_low, rng.p_high) == (P0, 1.0)

    def test_two_is_never_optimal(self):
        with pytest.raises(ValueError, match="never optimal"):
            optimality_range(2)

    def test_midpoint_consistency(self):
        for k in (3, 8, 50, 200):
            rng = optimality_range(k)
            assert samuels_optimal_k(0.5 * (rng.p_low + rng.p_high)) == k

    def test_interior_samples_recover_k(self):
        rng_state = np.random.default_rng(7)
        for k in range(3, 201):
            r = optimality_range(k)
            width = r.p_high - r.p_low
            ps = r.p_low + width * (0.01 + 0.98 * rng_state.random(100))
            for p in ps:
                assert samuels_optimal_k(float(p)) == k

    def test_ranges_tile_without_gaps(self):
        # consecutive sizes share endpoints exactly; k=3 meets the k=1 regime
        assert optimality_range(3).p_high == P0 == optimality_range(1).p_low
        for k in range(3, 200):
            assert optimality_range(k + 1).p_high == optimality_range(k).p_low
