"""Studentised test of independence and the one-sample KS test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import betainc

from .errors import InvalidValueError, SizeError
from .estimators import rho_kappa


@dataclass(frozen=True)
class TestResult:
    __test__ = False  # keep pytest from collecting this

    rho: float
    statistic: float
    df: int
    p_t: float
    p_normal: float
    alpha: float
    reject_t: bool
    reject_normal: bool
    perfect: bool = False  # |rho| == 1, statistic is +/-inf


@dataclass(frozen=True)
class KsResult:
    d: float
    p: float
    n: int


def t_statistic(rho: float, n: int) -> float:
    """``rho * sqrt(n - 2) / sqrt(1 - rho**2)``; +/-inf when |rho| == 1."""
    if n < 3:
        raise SizeError(f"need n >= 3, got {n}")
    if not -1.0 <= rho <= 1.0:
        raise InvalidValueError(f"correlation {rho!r} outside [-1, 1]")
    if abs(rho) == 1.0:
        return math.copysign(math.inf, rho)
    return rho * math.sqrt(n - 2) / math.sqrt(1.0 - rho * rho)


def _check_df(df) -> None:
    if not df >= 1:
        raise InvalidValueError(f"degrees of freedom must be >= 1, got {df}")


def _two_sided_tail(t, df):
    # P(|T| > |t|) via the regularised incomplete beta, picking whichever
    # argument is far from 1 so that small t at large df keeps full precision.
    t = np.asarray(t, dtype=np.float64)
    t2 = t * t
    with np.errstate(invalid="ignore", divide="ignore"):
        x = df / (df + t2)
        xc = t2 / (df + t2)
    direct = betainc(0.5 * df, 0.5, x)
    complement = 1.0 - betainc(0.5, 0.5 * df, xc)
    tail = np.where(x < 0.5, direct, complement)
    return np.where(np.isinf(t), 0.0, tail)


def student_t_cdf(t, df):
    """CDF of Student's t with ``df`` degrees of freedom. Vectorised over ``t``."""
    _check_df(df)
    if np.isnan(t).any():
        raise InvalidValueError("NaN argument")
    half_tail = 0.5 * _two_sided_tail(t, df)
    out = np.where(np.asarray(t) > 0, 1.0 - half_tail, half_tail)
    return float(out) if np.ndim(out) == 0 else out


def student_t_two_sided_p(t: float, df) -> float:
    _check_df(df)
    return float(_two_sided_tail(t, df))


def normal_two_sided_p(z: float) -> float:
    return math.erfc(abs(z) / math.sqrt(2.0))


def test_correlation(rho: float, n: int, alpha: float = 0.05) -> TestResult:
    """Two-sided test of rho == 0 given an estimate from n paired observations."""
    if not 0.0 < alpha < 1.0:
        raise InvalidValueError(f"alpha must lie in (0, 1), got {alpha}")
    stat = t_statistic(rho, n)
    df = n - 2
    p_t = student_t_two_sided_p(stat, df)
    p_n = normal_two_sided_p(stat)
    return TestResult(
        rho=rho,
        statistic=stat,
        df=df,
        p_t=p_t,
        p_normal=p_n,
        alpha=alpha,
        reject_t=p_t < alpha,
        reject_normal=p_n < alpha,
        perfect=math.isinf(stat),
    )


test_correlation.__test__ = False


def test_independence(x, y, alpha: float = 0.05) -> TestResult:
    """Kemeny rho test of independence, reporting both t and normal p-values."""
    est = rho_kappa(x, y)
    return test_correlation(est.value, est.n, alpha)


test_independence.__test__ = False


def kolmogorov_sf(lam: float) -> float:
    """Survival function of the limiting Kolmogorov distribution, P(K > lam)."""
    if lam <= 0.0:
        return 1.0
    if lam < 1.0:
        # Jacobi theta form converges fast for small lam
        total = 0.0
        k = 1
        while True:
            term = math.exp(-((2 * k - 1) ** 2) * math.pi**2 / (8.0 * lam * lam))
            total += term
            if term < 1e-12 * max(total, 1e-300) or term == 0.0:
                break
            k += 1
        return min(1.0, max(0.0, 1.0 - math.sqrt(2.0 * math.pi) / lam * total))
    total = 0.0
    k = 1
    while True:
        term = math.exp(-2.0 * k * k * lam * lam)
        total += term if k % 2 else -term
        if term < 1e-12:
            break
        k += 1
    return min(1.0, max(0.0, 2.0 * total))


def ks_one_sample(sample, cdf: Callable[[np.ndarray], np.ndarray]) -> KsResult:
    """Two-sided one-sample KS test against a continuous reference CDF.

    The p-value is asymptotic: ``kolmogorov_sf(sqrt(m) * D)``.
    """
    xs = np.sort(np.asarray(sample, dtype=np.float64))
    m = xs.shape[0]
    if m < 10:
        raise SizeError(f"KS test needs at least 10 points, got {m}")
    f = np.asarray(cdf(xs), dtype=np.float64)
    i = np.arange(1, m + 1)
    d_plus = np.max(i / m - f)
    d_minus = np.max(f - (i - 1) / m)
    d = float(max(d_plus, d_minus, 0.0))
    return KsResult(d=d, p=kolmogorov_sf(math.sqrt(m) * d), n=m)


def t_cdf_handle(df) -> Callable[[np.ndarray], np.ndarray]:
    _check_df(df)
    return lambda t: student_t_cdf(t, df)
