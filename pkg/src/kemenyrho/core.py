"""Score matrices, double centering and the rank-score embedding.

The O(n^2) matrix pipeline

    build_score_matrix -> center_score_matrix -> rank_score_vector

is kept deliberately literal and serves as the oracle for
:func:`rank_score_vector_fast`, which gets the same vector in O(n log n)
from sorted order counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, InvalidValueError, SizeError


@dataclass(frozen=True)
class ScoreMatrix:
    """Pairwise order indicators: +1 if ``x[k] >= x[l]``, -1 if ``x[k] < x[l]``, 0 on the diagonal.

    Ties give +1 in both directions, so the matrix is skew-symmetric only
    for tie-free input.
    """

    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class CenteredScoreMatrix:
    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class RankScoreVector:
    values: np.ndarray
    mean: float
    ss: float  # centered sum of squares

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @classmethod
    def from_values(cls, values: np.ndarray) -> "RankScoreVector":
        values = np.asarray(values, dtype=np.float64)
        mean = float(values.mean())
        dev = values - mean
        return cls(values=values, mean=mean, ss=float(np.dot(dev, dev)))


@dataclass(frozen=True)
class StandardizedVector:
    values: np.ndarray

    @property
    def n(self) -> int:
        return self.values.shape[0]


def as_observations(x) -> np.ndarray:
    """Validate a 1-d sample: length >= 2, no NaN (+/-inf allowed)."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise SizeError(f"expected a 1-d vector, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise SizeError(f"need at least 2 observations, got {arr.shape[0]}")
    if np.isnan(arr).any():
        raise InvalidValueError("NaN is not an orderable observation")
    return arr


def build_score_matrix(x) -> ScoreMatrix:
    x = as_observations(x)
    # Compare directly rather than via x[k] - x[l]: inf - inf is NaN.
    greater_eq = x[:, None] >= x[None, :]
    entries = np.where(greater_eq, 1, -1).astype(np.int8)
    np.fill_diagonal(entries, 0)
    return ScoreMatrix(entries)


def center_score_matrix(m: ScoreMatrix) -> CenteredScoreMatrix:
    """Remove scaled row/column sums, add back the scaled grand sum, zero the diagonal.

    The divisors are n-1 for row and column sums and n^2-n for the grand
    sum (not the 1/n of classical double centering).
    """
    k = m.entries.astype(np.float64)
    n = m.n
    col_sums = k.sum(axis=0)
    row_sums = k.sum(axis=1)
    grand = k.sum()
    out = k - col_sums[None, :] / (n - 1) - row_sums[:, None] / (n - 1) + grand / (n * n - n)
    np.fill_diagonal(out, 0.0)
    return CenteredScoreMatrix(out)


def rank_score_vector(cm: CenteredScoreMatrix) -> RankScoreVector:
    # Column sums, so that larger observations get larger scores.
    return RankScoreVector.from_values(cm.entries.sum(axis=0))


def rank_score_vector_fast(x) -> RankScoreVector:
    """Same result as the matrix pipeline, in O(n log n).

    Row sum k of the raw score matrix is ``2 * #{m: x[m] <= x[k]} - n - 1``;
    after centering, column sum l of the centered matrix works out to
    ``r[l] / (n-1) - sum(r) / (n (n-1))``.
    """
    x = as_observations(x)
    n = x.shape[0]
    at_most = np.searchsorted(np.sort(x), x, side="right")
    row_sums = 2 * at_most - n - 1
    grand = int(row_sums.sum())
    values = row_sums / (n - 1) - grand / (n * (n - 1))
    return RankScoreVector.from_values(values)


def standardize(v: RankScoreVector) -> StandardizedVector:
    """Center and scale to unit sample variance (sum of squares n-1)."""
    if not v.ss > 0.0:
        raise DegenerateInputError("rank-score vector is constant (all observations tied)")
    s = np.sqrt(v.ss / (v.n - 1))
    return StandardizedVector((v.values - v.mean) / s)


def _check_same_size(a: ScoreMatrix, b: ScoreMatrix) -> None:
    if a.n != b.n:
        raise SizeError(f"score matrices differ in size: {a.n} vs {b.n}")


def frobenius_distance_sq(a: ScoreMatrix, b: ScoreMatrix) -> int:
    _check_same_size(a, b)
    diff = a.entries.astype(np.int64) - b.entries.astype(np.int64)
    return int((diff * diff).sum())


def sign_disagreement_count(a: ScoreMatrix, b: ScoreMatrix) -> int:
    """Number of ordered pairs (k, l), k != l, where the two matrices differ."""
    _check_same_size(a, b)
    return int(np.count_nonzero(a.entries != b.entries))
