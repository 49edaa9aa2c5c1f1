"""Binomial tail kernel against exact integer and rational oracles."""

import math

import numpy as np
import pytest

from scencert.binom_tail import binom_cdf, log_binom_cdf, log_binom_coeff, log_sum_exp

from helpers import exact_binom_cdf


class TestLogBinomCoeff:
    def test_small_exact(self):
        assert log_binom_coeff(5, 2) == pytest.approx(math.log(10), rel=1e-14)

    def test_k_zero_is_zero(self):
        for n in (0, 1, 7, 1000, 100_000):
            assert log_binom_coeff(n, 0) == 0.0
            assert log_binom_coeff(n, n) == 0.0

    def test_central_big_integer(self):
        # C(50, 25) = 126410606437752 exactly
        assert log_binom_coeff(50, 25) == pytest.approx(
            math.log(126410606437752), rel=1e-14
        )

    def test_relative_error_grid(self):
        rng = np.random.default_rng(0)
        for n in (10, 100, 1000, 10_000, 100_000):
            ks = set(rng.integers(0, n + 1, size=8).tolist()) | {1, 2, n // 2}
            for k in ks:
                exact = math.log(math.comb(n, int(k)))
                got = log_binom_coeff(n, int(k))
                if exact == 0.0:
                    assert got == 0.0
                else:
                    assert abs(got - exact) <= 1e-12 * abs(exact)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            log_binom_coeff(3, 4)
        with pytest.raises(ValueError):
            log_binom_coeff(-1, 0)
        with pytest.raises(ValueError):
            log_binom_coeff(3, -1)


class TestLogSumExp:
    def test_empty_and_all_neg_inf(self):
        assert log_sum_exp([]) == -math.inf
        assert log_sum_exp([-math.inf, -math.inf]) == -math.inf

    def test_matches_direct(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            v = rng.normal(size=rng.integers(1, 40)) * 10
            assert log_sum_exp(v) == pytest.approx(
                math.log(np.exp(v).sum()), rel=1e-13
            )

    def test_extreme_shift(self):
        # overflow-free: terms around 1e4 in log space
        v = np.array([10_000.0, 10_000.0 + math.log(2.0)])
        assert log_sum_exp(v) == pytest.approx(10_000.0 + math.log(3.0), rel=1e-14)


class TestBinomCdf:
    def test_direct_summation_example(self):
        # (1 + 3) / 8
        assert binom_cdf(3, 1, 0.5) == pytest.approx(0.5, abs=1e-14)

    def test_full_sum_is_one(self):
        for n, t in [(1, 0.3), (17, 0.999), (400, 1e-9)]:
            assert binom_cdf(n, n, t) == 1.0

    def test_t_zero_is_one(self):
        for m in (0, 3, 9):
            assert binom_cdf(10, m, 0.0) == 1.0

    def test_t_one_is_zero(self):
        assert binom_cdf(10, 3, 1.0) == 0.0

    def test_paper_anchor_value(self):
        # the prior bound worked example: the tail at its published root
        value = binom_cdf(500, 17, 0.0889)
        assert 0.9e-6 < value < 1.1e-6

    def test_negative_m_convention(self):
        assert binom_cdf(12, -1, 0.4) == 0.0
        assert log_binom_cdf(12, -1, 0.4) == -math.inf

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            binom_cdf(5, 6, 0.5)
        with pytest.raises(ValueError):
            binom_cdf(5, 2, 1.5)
        with pytest.raises(ValueError):
            binom_cdf(0, 0, 0.5)

    def test_exact_rational_oracle(self):
        # log-space evaluation vs exact big-integer rational summation
        rng = np.random.default_rng(2)
        for _ in range(120):
            n = int(rng.integers(1, 51))
            m = int(rng.integers(0, n))
            t = float(rng.random())
            exact = float(exact_binom_cdf(n, m, t))
            assert binom_cdf(n, m, t) == pytest.approx(exact, abs=1e-10)

    def test_large_n_no_overflow(self):
        value = binom_cdf(100_000, 50_000, 0.5)
        assert 0.49 < value < 0.51


class TestMonotonicity:
    # Strictness is only assertable where the tail is resolvable in
    # doubles; outside the band the values saturate at 1 (or underflow)
    # and only the slack form of the inequality is meaningful.
    _BAND = (1e-12, 1.0 - 1e-9)

    def test_strictly_decreasing_in_t(self):
        rng = np.random.default_rng(3)
        checked = 0
        while checked < 250:
            n = int(rng.integers(2, 120))
            m = int(rng.integers(0, n))  # m < n
            t1, t2 = np.sort(rng.random(2) * 0.98 + 0.01)
            if t2 - t1 < 1e-6:
                continue
            b1, b2 = binom_cdf(n, m, t1), binom_cdf(n, m, t2)
            assert b2 < b1 + 2e-10
            if self._BAND[0] < b1 < self._BAND[1]:
                assert b1 > b2
                checked += 1

    def test_strictly_decreasing_in_n(self):
        rng = np.random.default_rng(4)
        checked = 0
        while checked < 250:
            n = int(rng.integers(1, 150))
            m = int(rng.integers(0, n + 1))
            t = float(rng.random() * 0.98 + 0.01)
            b_n = binom_cdf(n, m, t)
            b_next = binom_cdf(n + 1, m, t)
            assert b_next < b_n + 2e-10
            if self._BAND[0] < b_next and b_n < self._BAND[1]:
                assert b_next < b_n
                checked += 1

    def test_one_step_recurrence(self):
        # B_{n+1}(t; m) = (1-t) B_n(t; m) + t B_n(t; m-1)
        rng = np.random.default_rng(5)
        for _ in range(200):
            n = int(rng.integers(1, 200))
            m = int(rng.integers(0, n + 1))
            t = float(rng.random())
            lhs = binom_cdf(n + 1, m, t)
            rhs = (1 - t) * binom_cdf(n, m, t) + t * binom_cdf(n, m - 1, t)
            assert lhs == pytest.approx(rhs, abs=1e-10)
