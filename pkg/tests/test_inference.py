import math

import mpmath
import numpy as np
import pytest
import scipy.stats
from hypothesis import given
from hypothesis import strategies as st

from kemenyrho.errors import InvalidValueError, SizeError
from kemenyrho.inference import (
    kolmogorov_sf,
    ks_one_sample,
    normal_two_sided_p,
    student_t_cdf,
    t_cdf_handle,
    t_statistic,
    test_correlation,
    test_independence,
)
from kemenyrho.simulate import GeneratorSpec, generate_pair, quantile_t

mpmath.mp.dps = 40


def t_cdf_mp(t, df):
    t = mpmath.mpf(t)
    x = df / (df + t * t)
    half = mpmath.betainc(mpmath.mpf(df) / 2, mpmath.mpf(1) / 2, 0, x, regularized=True) / 2
    return float(1 - half if t > 0 else half)


class TestTStatistic:
    def test_values(self):
        assert t_statistic(0.0, 30) == 0.0
        assert t_statistic(0.5, 11) == pytest.approx(0.5 * 3 / math.sqrt(0.75), abs=1e-14)
        assert t_statistic(0.5, 11) == pytest.approx(1.7320508, abs=1e-7)
        assert t_statistic(-0.5, 11) == -t_statistic(0.5, 11)

    def test_perfect(self):
        assert t_statistic(1.0, 10) == math.inf
        assert t_statistic(-1.0, 10) == -math.inf

    def test_errors(self):
        with pytest.raises(InvalidValueError):
            t_statistic(1.01, 10)
        with pytest.raises(SizeError):
            t_statistic(0.1, 2)

    @given(st.floats(-0.999, 0.999), st.floats(-0.999, 0.999), st.integers(3, 5000))
    def test_odd_and_increasing(self, a, b, n):
        assert t_statistic(-a, n) == -t_statistic(a, n)
        if a < b:
            assert t_statistic(a, n) < t_statistic(b, n)


class TestStudentT:
    def test_anchors(self):
        assert student_t_cdf(0.0, 7) == 0.5
        assert abs(student_t_cdf(1.0, 1) - (0.5 + math.atan(1.0) / math.pi)) <= 1e-12
        assert student_t_cdf(math.inf, 4) == 1.0
        assert student_t_cdf(-math.inf, 4) == 0.0
        assert student_t_cdf(1e6, 3) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("df", [1, 2, 5, 28, 498, 3498, 10**6])
    def test_against_mpmath(self, df):
        grid = [-6.0, -2.0, -1e-3, 1e-8, 0.3, 1.0, 2.5, 8.0]
        if df < 10**5:
            grid += [-40.0, 100.0]  # mpmath cannot resolve these tails at huge df
        for t in grid:
            assert abs(student_t_cdf(t, df) - t_cdf_mp(t, df)) <= 1e-10, (t, df)

    def test_vectorised(self):
        t = np.linspace(-5, 5, 11)
        np.testing.assert_allclose(student_t_cdf(t, 9), scipy.stats.t.cdf(t, 9), atol=1e-12)

    @given(st.floats(-1e3, 1e3), st.integers(1, 10**5))
    def test_symmetry(self, t, df):
        assert abs(student_t_cdf(-t, df) + student_t_cdf(t, df) - 1.0) <= 1e-12

    def test_bad_df(self):
        with pytest.raises(InvalidValueError):
            student_t_cdf(0.5, 0)

    def test_normal_limit_monotone(self):
        grid = np.linspace(-5, 5, 2001)
        gaps = [np.max(np.abs(student_t_cdf(grid, df) - scipy.stats.norm.cdf(grid))) for df in (10**2, 10**3, 10**4)]
        assert gaps[0] > gaps[1] > gaps[2]


class TestQuantile:
    def test_anchors(self):
        assert quantile_t(0.5, 5) == 0.0
        assert quantile_t(0.75, 1) == pytest.approx(1.0, abs=1e-9)
        assert quantile_t(0.975, 10**6) == pytest.approx(1.95996, abs=1e-3)

    @pytest.mark.parametrize("df", [1, 3, 28, 3498])
    def test_inverse(self, df):
        p = np.array([1e-6, 0.01, 0.2, 0.5, 0.77, 0.99, 1 - 1e-6])
        q = quantile_t(p, df)
        assert np.all(np.abs(student_t_cdf(q, df) - p) <= 1e-10)
        np.testing.assert_allclose(q, scipy.stats.t.ppf(p, df), rtol=1e-8, atol=1e-9)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
    def test_domain(self, p):
        with pytest.raises(InvalidValueError):
            quantile_t(p, 4)


class TestIndependence:
    def test_perfect(self):
        x = np.arange(10.0)
        res = test_independence(x, x)
        assert res.perfect
        assert res.statistic == math.inf
        assert res.p_t == 0.0 and res.p_normal == 0.0
        assert res.reject_t and res.reject_normal

    def test_zero_rho(self):
        res = test_correlation(0.0, 12, 0.05)
        assert res.p_t == 1.0 and res.p_normal == 1.0
        assert not res.reject_t

    def test_p_values_match_scipy(self):
        res = test_correlation(0.31, 25, 0.05)
        assert res.df == 23
        assert res.p_t == pytest.approx(2 * scipy.stats.t.sf(res.statistic, 23), abs=1e-12)
        assert res.p_normal == pytest.approx(2 * scipy.stats.norm.sf(res.statistic), abs=1e-12)

    def test_pearson_t_test_agrees_on_normal_data(self):
        # same t form as Pearson's classical test, so p_t must match scipy's pearsonr
        rng = np.random.default_rng(3)
        x, y = rng.normal(size=40), rng.normal(size=40)
        r, p = scipy.stats.pearsonr(x, y)
        assert test_correlation(r, 40).p_t == pytest.approx(p, abs=1e-10)

    def test_alpha_validation(self):
        with pytest.raises(InvalidValueError):
            test_correlation(0.1, 10, 1.0)

    @given(st.floats(-0.99, 0.99), st.integers(3, 200), st.floats(0.001, 0.5))
    def test_reject_iff_p_below_alpha(self, rho, n, alpha):
        res = test_correlation(rho, n, alpha)
        assert 0.0 <= res.p_t <= 1.0 and 0.0 <= res.p_normal <= 1.0
        assert res.reject_t == (res.p_t < alpha)
        assert res.reject_normal == (res.p_normal < alpha)

    @pytest.mark.slow
    def test_uniform_level(self):
        rng = np.random.default_rng(17)
        rejections = sum(test_independence(rng.random(30), rng.random(30)).reject_t for _ in range(2000))
        assert 0.04 <= rejections / 2000 <= 0.06

    def test_normal_p(self):
        assert normal_two_sided_p(1.959963984540054) == pytest.approx(0.05, abs=1e-12)


class TestKolmogorov:
    @pytest.mark.parametrize("lam", [0.05, 0.3, 0.6, 0.99, 1.0, 1.17, 1.5, 2.5, 5.0])
    def test_sf_against_scipy(self, lam):
        assert kolmogorov_sf(lam) == pytest.approx(scipy.stats.kstwobign.sf(lam), abs=1e-12)

    def test_reported_pairs(self):
        assert kolmogorov_sf(math.sqrt(5000) * 0.01659) == pytest.approx(0.1275, abs=5e-3)
        assert kolmogorov_sf(math.sqrt(5000) * 0.0071848) == pytest.approx(0.9586, abs=5e-3)

    def test_quantile_sample(self):
        m = 400
        sample = quantile_t((np.arange(1, m + 1) - 0.5) / m, 28)
        res = ks_one_sample(sample, t_cdf_handle(28))
        assert res.d == pytest.approx(0.5 / m, abs=1e-9)
        assert res.p == pytest.approx(1.0)

    def test_statistic_matches_scipy(self):
        rng = np.random.default_rng(11)
        sample = rng.standard_t(5, size=300) * 1.1
        ours = ks_one_sample(sample, t_cdf_handle(5))
        theirs = scipy.stats.kstest(sample, scipy.stats.t(5).cdf)
        assert ours.d == pytest.approx(theirs.statistic, abs=1e-12)
        assert ours.n == 300
        assert 0.0 <= ours.d <= 1.0

    def test_too_small(self):
        with pytest.raises(SizeError):
            ks_one_sample(np.arange(9.0), t_cdf_handle(3))

    def test_detects_wrong_reference(self):
        x, _ = generate_pair(GeneratorSpec("gaussian", n=2000, seed=4), 0)
        assert ks_one_sample(x + 0.5, t_cdf_handle(1000)).p < 1e-6
