"""Chernoff, Clopper-Pearson and prior scenario bounds."""

import math

import numpy as np
import pytest

from scencert.binom_tail import binom_cdf
from scencert.classic_bounds import apriori_epsilon, chernoff_bound, clopper_pearson


class TestChernoff:
    def test_published_worked_value(self):
        assert chernoff_bound(100, 10, 1e-6).value == pytest.approx(0.3628, abs=5e-4)

    def test_zero_frequency_closed_form(self):
        for m, beta in [(50, 1e-3), (400, 1e-6), (7, 0.2)]:
            expected = math.sqrt(math.log(beta) / (-2 * m))
            assert chernoff_bound(m, 0, beta).value == pytest.approx(expected, rel=1e-14)

    def test_direct_formula_value(self):
        expected = 0.1 + math.sqrt(math.log(1e-6) / (-800.0))
        result = chernoff_bound(400, 40, 1e-6)
        assert result.value == pytest.approx(expected, rel=1e-14)
        assert result.value == pytest.approx(0.2314, abs=5e-4)
        assert not result.exceeds_one

    def test_out_of_range_flag(self):
        result = chernoff_bound(10, 9, 1e-6)
        assert result.value > 1.0
        assert result.exceeds_one

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            chernoff_bound(0, 0, 0.5)
        with pytest.raises(ValueError):
            chernoff_bound(10, 11, 0.5)
        with pytest.raises(ValueError):
            chernoff_bound(10, 2, 1.0)


class TestClopperPearson:
    def test_published_worked_values(self):
        assert clopper_pearson(100, 10, 1e-6) == pytest.approx(0.3045, abs=5e-4)
        assert clopper_pearson(500, 2, 1e-6) == pytest.approx(0.0376, abs=5e-4)

    def test_all_violations_is_one(self):
        for m in (1, 9, 240):
            assert clopper_pearson(m, m, 1e-6) == 1.0

    def test_single_trial_closed_form(self):
        # B_1(x; 0) = 1 - x, so the root is exactly 1 - beta
        for beta in (0.5, 0.01, 1e-6):
            assert clopper_pearson(1, 0, beta) == pytest.approx(1 - beta, abs=1e-9)

    def test_residual_at_root(self):
        rng = np.random.default_rng(10)
        tol = 1e-10
        for _ in range(40):
            m = int(rng.integers(2, 300))
            l = int(rng.integers(0, m))
            beta = float(10 ** rng.uniform(-8, -0.5))
            eta = clopper_pearson(m, l, beta, tol)
            h = 1e-6
            slope = abs(binom_cdf(m, l, eta + h) - binom_cdf(m, l, eta - h)) / (2 * h)
            assert abs(binom_cdf(m, l, eta) - beta) <= 10 * tol * max(slope, 1.0)

    def test_incremental_monotonicity(self):
        # more trials tighten; a new violation loosens past the old bound
        rng = np.random.default_rng(11)
        cases = 0
        while cases < 200:
            m = int(rng.integers(1, 120))
            l = int(rng.integers(0, m + 1))
            beta = float(10 ** rng.uniform(-7, -1))
            assert clopper_pearson(m, l, beta) > clopper_pearson(m + 1, l, beta)
            if l < m:
                assert clopper_pearson(m + 1, l + 1, beta) > clopper_pearson(m, l, beta)
            assert clopper_pearson(m + 1, m + 1, beta) == clopper_pearson(m, m, beta) == 1.0
            cases += 1

    def test_never_looser_than_chernoff_in_range(self):
        rng = np.random.default_rng(12)
        for _ in range(300):
            m = int(rng.integers(1, 400))
            l = int(rng.integers(0, m + 1))
            beta = float(10 ** rng.uniform(-8, -1))
            rho = chernoff_bound(m, l, beta)
            if not rho.exceeds_one:
                assert rho.value >= clopper_pearson(m, l, beta) - 1e-9


class TestAprioriEpsilon:
    def test_published_worked_value(self):
        assert apriori_epsilon(500, 18, 1e-6) == pytest.approx(0.0889, abs=5e-4)

    def test_single_support_closed_form(self):
        # B_n(x; 0) = (1 - x)^n, root x = 1 - beta^(1/n)
        for n, beta in [(100, 0.5), (40, 1e-4), (7, 0.9)]:
            expected = 1 - beta ** (1.0 / n)
            assert apriori_epsilon(n, 1, beta) == pytest.approx(expected, abs=1e-9)

    def test_decreasing_in_n(self):
        values = [apriori_epsilon(n, 18, 1e-6) for n in (100, 200, 500, 1000)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            apriori_epsilon(10, 10, 0.5)  # vacuous: zeta >= n
        with pytest.raises(ValueError):
            apriori_epsilon(10, 0, 0.5)
        with pytest.raises(ValueError):
            apriori_epsilon(10, 2, 0.0)
