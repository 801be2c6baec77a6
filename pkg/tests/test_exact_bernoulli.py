"""Exact Bernoulli(p) quantities against enumeration and known values."""

import math

import numpy as np
import pytest

from pareto_maxima import config
from pareto_maxima import exact_bernoulli as eb
from pareto_maxima.distributions import Bernoulli, ContinuousUniform01, parse_distribution
from pareto_maxima.errors import DomainError, ResourceLimitError
from pareto_maxima.exact_continuous import p_recurrence
from pareto_maxima.gamma_functional import gamma_closed_form
from pareto_maxima.logspace import HugeN


class TestKnownValues:
    def test_strong(self):
        np.testing.assert_allclose(eb.p_bernoulli(1, 2, 0.5).prob, 0.25, rtol=1e-15)
        np.testing.assert_allclose(eb.p_bernoulli(2, 2, 0.5).prob, 7 / 16, rtol=1e-15)

    def test_weak(self):
        np.testing.assert_allclose(eb.q_bernoulli(1, 2, 0.5).prob, 0.75, rtol=1e-15)
        np.testing.assert_allclose(eb.q_bernoulli(5, 2, 0.5).prob, 813 / 1024, rtol=1e-14)

    def test_pair(self):
        np.testing.assert_allclose(eb.pair_prob(2, 2, 0.5).prob, 0.125, rtol=1e-15)
        assert eb.pair_prob(1, 5, 0.5).log_p.is_zero
        assert eb.pair_prob(3, 1, 0.5).log_p.is_zero

    def test_variance(self):
        r = eb.variance_front_size(1, 2, 0.5)
        assert r.kind == "variance_raw" and r.flag == ""
        np.testing.assert_allclose(r.value, 0.25, rtol=1e-15)
        assert r.reported == r.value
        assert eb.variance_front_size(4, 1, 0.3).value == 0.0

    def test_single_vector(self):
        assert eb.p_bernoulli(3, 1, 0.4).log_p.log_value == 0.0
        assert eb.q_bernoulli(3, 1, 0.4).log_p.log_value == 0.0

    def test_fixed_k_asymptotic_is_last_term(self):
        r = eb.p_bernoulli_fixed_k_asymptotic(3, 10, 0.5)
        np.testing.assert_allclose(r.prob, 0.125 * (1 - 0.125) ** 9, rtol=1e-14)


class TestEnumerationOracle:
    @pytest.mark.parametrize("p", [0.3, 0.5, 0.7])
    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_exact_formulas_match(self, k, n, p):
        bf = eb.brute_force_discrete(k, n, Bernoulli(p))
        np.testing.assert_allclose(eb.p_bernoulli(k, n, p).prob, bf.p_strong, rtol=1e-10, atol=1e-14)
        np.testing.assert_allclose(eb.q_bernoulli(k, n, p).prob, bf.q_weak, rtol=1e-10, atol=1e-14)
        np.testing.assert_allclose(eb.pair_prob(k, n, p).prob, bf.pair_strong, rtol=1e-10, atol=1e-14)
        np.testing.assert_allclose(eb.variance_front_size(k, n, p).value, bf.var_front, rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(eb.expected_front_size_bernoulli(k, n, p), bf.mean_front, rtol=1e-10, atol=1e-14)

    def test_pmf_is_a_distribution(self):
        bf = eb.brute_force_discrete(2, 4, Bernoulli(0.3))
        assert len(bf.front_pmf) == 5
        np.testing.assert_allclose(math.fsum(bf.front_pmf), 1.0, rtol=1e-12)

    def test_general_finite_law(self):
        """Three atoms: weak front contains the strong one, mean = n * P."""
        bf = eb.brute_force_discrete(2, 3, parse_distribution("disc:0:1/3,1:1/3,2:1/3"))
        assert bf.q_weak >= bf.p_strong
        np.testing.assert_allclose(bf.mean_front, 3 * bf.p_strong, rtol=1e-12)

    def test_cap(self, monkeypatch):
        monkeypatch.setattr(config, "BRUTE_FORCE_CAP", 100)
        with pytest.raises(ResourceLimitError):
            eb.brute_force_discrete(3, 3, Bernoulli(0.5))

    def test_needs_atoms(self):
        with pytest.raises(DomainError):
            eb.brute_force_discrete(2, 2, ContinuousUniform01())


class TestOrdering:
    @pytest.mark.parametrize("p", [0.3, 0.5, 0.7])
    def test_sandwich(self, p):
        """p_bern <= p_continuous and p_bern <= q_bern."""
        for k in range(1, 6):
            for n in (2, 3, 7, 20, 50):
                strong = eb.p_bernoulli(k, n, p).prob
                assert strong <= p_recurrence(k, n).prob + 1e-15
                assert strong <= eb.q_bernoulli(k, n, p).prob + 1e-15

    def test_weak_not_below_continuous_in_general(self):
        assert eb.q_bernoulli(1, 2, 0.5).prob > p_recurrence(1, 2).prob
        assert eb.q_bernoulli(5, 2, 0.5).prob < p_recurrence(5, 2).prob


class TestGrowingDimension:
    """k = ceil(c log n / gamma) for Bernoulli(1/2) on a decade grid."""

    GAMMA = gamma_closed_form(Bernoulli(0.5)).value

    def _sweep(self, c, decades):
        out = []
        for l10 in decades:
            n = HugeN.from_log10(l10)
            k = math.ceil(c * n.ln / self.GAMMA)
            out.append((k, n, eb.p_bernoulli(k, n, 0.5).log_p.log_value, eb.q_bernoulli(k, n, 0.5).log_p.log_value))
        return out

    def test_above_threshold_tends_to_one(self):
        rows = self._sweep(1.5, range(10, 101, 10))
        log_p = np.array([r[2] for r in rows])
        assert np.all(np.diff(log_p) > 0.0)
        assert np.all(log_p[4:] > math.log(0.99))
        gap = [r[3] - r[2] for r in rows]
        assert all(g >= 0.0 for g in gap)
        assert gap[-1] < gap[0]

    def test_below_threshold_tends_to_zero(self):
        rows = self._sweep(0.5, range(10, 101, 10))
        log_p = np.array([r[2] for r in rows])
        assert np.all(np.diff(log_p) < 0.0)
        assert np.all(log_p < math.log(1e-6))

    def test_weak_over_strong_below_threshold(self):
        """log(q/p) is n 2^-k when k is about log2 n."""
        for k, n, lp, lq in self._sweep(0.5, (20, 40, 60, 80, 100)):
            expected = math.exp(n.ln - k * math.log(2.0))
            assert abs((lq - lp) - expected) < 1e-6

    def test_huge_n_stays_finite(self):
        r = eb.p_bernoulli(600, HugeN.from_log10(130), 0.5)
        assert math.isfinite(r.log_p.log_value)


class TestVarianceCancellation:
    def test_flagged_when_digits_are_lost(self):
        r = eb.variance_front_size(100, 10**9, 0.5)
        assert r.flag == "cancellation"
        assert r.value >= 0.0

    def test_needs_exact_n(self):
        with pytest.raises(DomainError):
            eb.variance_front_size(3, HugeN.from_log10(20), 0.5)

    def test_cap(self, monkeypatch):
        monkeypatch.setattr(config, "VARIANCE_MAX_N", 10)
        with pytest.raises(ResourceLimitError):
            eb.variance_front_size(3, 11, 0.5)


class TestValidation:
    @pytest.mark.parametrize("k, n, p", [(0, 3, 0.5), (2, 0, 0.5), (2, 3, 0.0), (2, 3, 1.0)])
    def test_domain(self, k, n, p):
        with pytest.raises(DomainError):
            eb.p_bernoulli(k, n, p)

    def test_result_shape(self):
        with pytest.raises(DomainError):
            eb.BernoulliProbResult(2, HugeN.of(3), 0.5, "strong", value=0.1)
        with pytest.raises(DomainError):
            eb.BernoulliProbResult(2, HugeN.of(3), 0.5, "variance_raw", value=-1.0)
        with pytest.raises(DomainError):
            _ = eb.variance_front_size(1, 2, 0.5).prob
