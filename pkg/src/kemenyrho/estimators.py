"""Correlation estimators: the Kemeny rho plus the classical baselines.

``ustat_pairwise`` and ``ustat_rowsum`` are diagnostics. They are two
different normalisations of the same pairwise kernel and are not expected
to agree with each other or with :func:`rho_kappa`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import rankdata

from .core import (
    as_observations,
    build_score_matrix,
    center_score_matrix,
    rank_score_vector,
    rank_score_vector_fast,
)
from .errors import DegenerateInputError, SizeError


class Method(str, Enum):
    KEMENY = "kemeny"
    SPEARMAN = "spearman"
    KENDALL_A = "kendall_a"
    KENDALL_B = "kendall_b"
    PEARSON = "pearson"
    USTAT_PAIRWISE = "ustat_pairwise"
    USTAT_ROWSUM = "ustat_rowsum"


BOUNDED_METHODS = frozenset(
    {Method.KEMENY, Method.SPEARMAN, Method.KENDALL_A, Method.KENDALL_B, Method.PEARSON}
)


@dataclass(frozen=True)
class CorrelationEstimate:
    method: Method
    value: float
    n: int

    @property
    def bounded(self) -> bool:
        """False for the U-statistic diagnostics, which can leave [-1, 1]."""
        return self.method in BOUNDED_METHODS


def _pair(x, y, min_n: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.shape != y.shape:
        raise SizeError(f"x and y must be 1-d of equal length, got {x.shape} and {y.shape}")
    if x.shape[0] < min_n:
        raise SizeError(f"need at least {min_n} observations, got {x.shape[0]}")
    return as_observations(x), as_observations(y)


def _cosine(dx: np.ndarray, dy: np.ndarray) -> float:
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx <= 0.0 or syy <= 0.0:
        raise DegenerateInputError("zero variance in at least one variable")
    r = float(np.dot(dx, dy)) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


def rho_kappa(x, y) -> CorrelationEstimate:
    """Kemeny rho: cosine between the centered rank-score vectors of x and y."""
    x, y = _pair(x, y, 3)
    vx = rank_score_vector_fast(x)
    vy = rank_score_vector_fast(y)
    if vx.ss <= 0.0 or vy.ss <= 0.0:
        raise DegenerateInputError("all observations tied in at least one variable")
    value = _cosine(vx.values - vx.mean, vy.values - vy.mean)
    return CorrelationEstimate(Method.KEMENY, value, x.shape[0])


def spearman_rho(x, y) -> CorrelationEstimate:
    """Pearson correlation of average ranks."""
    x, y = _pair(x, y, 3)
    rx = rankdata(x, method="average")
    ry = rankdata(y, method="average")
    value = _cosine(rx - rx.mean(), ry - ry.mean())
    return CorrelationEstimate(Method.SPEARMAN, value, x.shape[0])


def _sign_matrix(x: np.ndarray) -> np.ndarray:
    # compare instead of subtracting: inf - inf is NaN
    return (x[:, None] > x[None, :]).astype(np.int64) - (x[:, None] < x[None, :]).astype(np.int64)


def _pair_signs(x: np.ndarray, y: np.ndarray):
    iu = np.triu_indices(x.shape[0], k=1)
    return _sign_matrix(x)[iu], _sign_matrix(y)[iu]


def kendall_tau_a(x, y) -> CorrelationEstimate:
    x, y = _pair(x, y, 2)
    n = x.shape[0]
    sx, sy = _pair_signs(x, y)
    value = float(np.sum(sx * sy)) / (n * (n - 1) / 2)
    return CorrelationEstimate(Method.KENDALL_A, value, n)


def kendall_tau_b(x, y) -> CorrelationEstimate:
    x, y = _pair(x, y, 2)
    n = x.shape[0]
    sx, sy = _pair_signs(x, y)
    pairs = n * (n - 1) / 2
    tied_x = float(np.count_nonzero(sx == 0))
    tied_y = float(np.count_nonzero(sy == 0))
    denom = np.sqrt((pairs - tied_x) * (pairs - tied_y))
    if denom == 0.0:
        raise DegenerateInputError("every pair is tied in at least one variable")
    value = float(np.clip(np.sum(sx * sy) / denom, -1.0, 1.0))
    return CorrelationEstimate(Method.KENDALL_B, value, n)


def pearson_r(x, y) -> CorrelationEstimate:
    x, y = _pair(x, y, 3)
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise DegenerateInputError("Pearson's r is undefined for infinite observations")
    value = _cosine(x - x.mean(), y - y.mean())
    return CorrelationEstimate(Method.PEARSON, value, x.shape[0])


def _centered_matrices(x: np.ndarray, y: np.ndarray):
    return (
        center_score_matrix(build_score_matrix(x)).entries,
        center_score_matrix(build_score_matrix(y)).entries,
    )


def ustat_pairwise(x, y) -> CorrelationEstimate:
    """Average of ``kt(x)[k, l] * kt(y)[k, l]`` over ordered pairs k != l (kt = centered score matrix).

    Brute force, O(n^2) memory. Not normalised by the variances.
    """
    x, y = _pair(x, y, 3)
    n = x.shape[0]
    cx, cy = _centered_matrices(x, y)
    # diagonals are zero, so the full sum is the off-diagonal sum
    value = float(np.sum(cx * cy)) / (n * n - n)
    return CorrelationEstimate(Method.USTAT_PAIRWISE, value, n)


def ustat_rowsum(x, y) -> CorrelationEstimate:
    """``(1/n) * sum_k xs[k] * ys[k]`` on the mean-centered rank-score vectors."""
    x, y = _pair(x, y, 3)
    n = x.shape[0]
    vx = rank_score_vector(center_score_matrix(build_score_matrix(x)))
    vy = rank_score_vector(center_score_matrix(build_score_matrix(y)))
    value = float(np.dot(vx.values - vx.mean, vy.values - vy.mean)) / n
    return CorrelationEstimate(Method.USTAT_ROWSUM, value, n)


def frobenius_cosine(x, y, centered: bool = True) -> float:
    """Normalised Frobenius inner product of the (optionally centered) score matrices.

    Uncentered and on tie-free data this is exactly Kendall's tau_a. With
    centering it is not: the centering removes a rank-difference component
    and leaves a mix of tau and Spearman's rho.
    """
    x, y = _pair(x, y, 2)
    if centered:
        a, b = _centered_matrices(x, y)
    else:
        a = build_score_matrix(x).entries.astype(np.float64)
        b = build_score_matrix(y).entries.astype(np.float64)
    denom = np.sqrt(np.sum(a * a) * np.sum(b * b))
    if denom == 0.0:
        raise DegenerateInputError("score matrix has zero norm")
    return float(np.sum(a * b) / denom)


ESTIMATORS = {
    Method.KEMENY: rho_kappa,
    Method.SPEARMAN: spearman_rho,
    Method.KENDALL_A: kendall_tau_a,
    Method.KENDALL_B: kendall_tau_b,
    Method.PEARSON: pearson_r,
    Method.USTAT_PAIRWISE: ustat_pairwise,
    Method.USTAT_ROWSUM: ustat_rowsum,
}


def estimate(method, x, y) -> CorrelationEstimate:
    return ESTIMATORS[Method(method)](x, y)
