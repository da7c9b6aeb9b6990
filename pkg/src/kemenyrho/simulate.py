"""Null-hypothesis Monte-Carlo harness.

Every replicate draws from its own Philox stream, keyed by
``SeedSequence(seed, spawn_key=(replicate_index,))``. Results therefore do
not depend on execution order or on how many threads run the replicates.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.special import ndtri

from .errors import ConfigError, DegenerateInputError, InvalidValueError
from .estimators import rho_kappa
from .inference import (
    KsResult,
    _check_df,
    _two_sided_tail,
    ks_one_sample,
    student_t_cdf,
    t_cdf_handle,
    t_statistic,
)

KINDS = ("gaussian", "ordinal", "zero_inflated")
MIN_REPS = 100
RNG_ALGORITHM = "numpy-philox4x32-10/seedsequence-spawn-key"


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str = "gaussian"
    n: int = 30
    seed: int = 0
    levels: int = 5  # ordinal only
    zero_mass: float = 0.3  # zero_inflated only

    def __post_init__(self):
        kind = self.kind.replace("-", "_")
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise ConfigError(f"unknown generator kind {self.kind!r}; choose from {KINDS}")
        if self.n < 3:
            raise ConfigError(f"n must be >= 3, got {self.n}")
        if self.levels < 2:
            raise ConfigError(f"levels must be >= 2, got {self.levels}")
        if not 0.0 <= self.zero_mass < 1.0:
            raise ConfigError(f"zero_mass must lie in [0, 1), got {self.zero_mass}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass
class SimulationReport:
    spec: GeneratorSpec
    reps: int
    statistics: np.ndarray  # t statistics of the retained replicates, in replicate order
    rhos: np.ndarray
    ks: KsResult
    qq: np.ndarray  # (m, 2): theoretical, empirical
    mean_rho: float
    rng_algorithm: str = RNG_ALGORITHM
    excluded: list[int] = field(default_factory=list)  # degenerate replicate indices

    @property
    def df(self) -> int:
        return self.spec.n - 2

    def to_dict(self) -> dict:
        return {
            "spec": asdict(self.spec),
            "reps": self.reps,
            "retained": int(self.statistics.shape[0]),
            "excluded": len(self.excluded),
            "excluded_indices": list(self.excluded),
            "df": self.df,
            "rng_algorithm": self.rng_algorithm,
            "mean_rho": self.mean_rho,
            "ks": asdict(self.ks),
            "statistics": self.statistics.tolist(),
            "qq": self.qq.tolist(),
        }


def replicate_rng(seed: int, replicate_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(replicate_index,))
    return np.random.Generator(np.random.Philox(ss))


def _draw(spec: GeneratorSpec, rng: np.random.Generator) -> np.ndarray:
    n = spec.n
    if spec.kind == "gaussian":
        return rng.standard_normal(n)
    if spec.kind == "ordinal":
        cuts = ndtri(np.arange(1, spec.levels) / spec.levels)
        return np.searchsorted(cuts, rng.standard_normal(n)).astype(np.float64)
    zero = rng.random(n) < spec.zero_mass
    tail = rng.standard_exponential(n)
    return np.where(zero, 0.0, tail)


def generate_pair(spec: GeneratorSpec, replicate_index: int) -> tuple[np.ndarray, np.ndarray]:
    """Independent (x, y) for one replicate; deterministic in (seed, index)."""
    if replicate_index < 0:
        raise ConfigError(f"replicate index must be >= 0, got {replicate_index}")
    rng = replicate_rng(spec.seed, replicate_index)
    x = _draw(spec, rng)
    y = _draw(spec, rng)
    return x, y


def _one_replicate(spec: GeneratorSpec, index: int):
    x, y = generate_pair(spec, index)
    try:
        rho = rho_kappa(x, y).value
    except DegenerateInputError:
        return None
    return rho, t_statistic(rho, spec.n)


def thread_count(requested: int | None = None) -> int:
    """Resolve a worker count; ``None`` reads ``KEMENY_THREADS`` and 0 means one per CPU."""
    if requested is None:
        raw = os.environ.get("KEMENY_THREADS", "0").strip() or "0"
        try:
            requested = int(raw)
        except ValueError:
            raise ConfigError(f"KEMENY_THREADS must be an integer, got {raw!r}") from None
    if requested < 0:
        raise ConfigError(f"thread count must be >= 0, got {requested}")
    if requested == 0:
        return os.cpu_count() or 1
    return requested


def quantile_t(p, df):
    """Inverse Student-t CDF by vectorised bisection on :func:`student_t_cdf`."""
    _check_df(df)
    p = np.asarray(p, dtype=np.float64)
    if np.any(~((p > 0.0) & (p < 1.0))):
        raise InvalidValueError("probabilities must lie strictly inside (0, 1)")
    lo = np.full(p.shape, -1.0)
    hi = np.full(p.shape, 1.0)
    # widen until the bracket holds p
    while True:
        grow_lo = student_t_cdf(lo, df) > p
        grow_hi = student_t_cdf(hi, df) < p
        if not (np.any(grow_lo) or np.any(grow_hi)):
            break
        lo = np.where(grow_lo, lo * 2.0, lo)
        hi = np.where(grow_hi, hi * 2.0, hi)
    for _ in range(2200):
        mid = 0.5 * (lo + hi)
        below = student_t_cdf(mid, df) < p
        new_lo = np.where(below, mid, lo)
        new_hi = np.where(below, hi, mid)
        if np.array_equal(new_lo, lo) and np.array_equal(new_hi, hi):
            break
        lo, hi = new_lo, new_hi
    # pick whichever endpoint is closer in probability
    err_lo = np.abs(student_t_cdf(lo, df) - p)
    err_hi = np.abs(student_t_cdf(hi, df) - p)
    out = np.where(err_hi <= err_lo, hi, lo)
    out = np.where(p == 0.5, 0.0, out)  # exact by symmetry
    return float(out) if out.ndim == 0 else out


def qq_pairs(statistics, df) -> np.ndarray:
    """(theoretical, empirical) quantile pairs at plotting positions (i - 0.5) / m."""
    emp = np.sort(np.asarray(statistics, dtype=np.float64))
    m = emp.shape[0]
    if m == 0:
        return np.empty((0, 2))
    probs = (np.arange(1, m + 1) - 0.5) / m
    return np.column_stack([quantile_t(probs, df), emp])


def run_null_simulation(spec: GeneratorSpec, reps: int, threads: int | None = None) -> SimulationReport:
    """Replicate the null experiment ``reps`` times and test the t statistics against t_{n-2}.

    Replicates whose sample is entirely tied in x or y are excluded and
    listed in ``SimulationReport.excluded``; they are not redrawn.
    """
    if reps < MIN_REPS:
        raise ConfigError(f"reps must be >= {MIN_REPS}, got {reps}")
    workers = thread_count(threads)
    indices = range(reps)
    if workers == 1:
        results = [_one_replicate(spec, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _one_replicate(spec, i), indices, chunksize=64))

    excluded = [i for i, r in enumerate(results) if r is None]
    kept = [r for r in results if r is not None]
    rhos = np.array([r[0] for r in kept], dtype=np.float64)
    stats = np.array([r[1] for r in kept], dtype=np.float64)
    df = spec.n - 2
    if stats.shape[0] >= 10:
        ks = ks_one_sample(stats, t_cdf_handle(df))
    else:
        ks = KsResult(d=math.nan, p=math.nan, n=int(stats.shape[0]))
    return SimulationReport(
        spec=spec,
        reps=reps,
        statistics=stats,
        rhos=rhos,
        ks=ks,
        qq=qq_pairs(stats, df),
        mean_rho=float(rhos.mean()) if rhos.size else math.nan,
        excluded=excluded,
    )


def rejection_rate(spec: GeneratorSpec, reps: int, alpha: float = 0.05, threads: int | None = None) -> float:
    """Fraction of retained null replicates whose two-sided t p-value falls below alpha."""
    report = run_null_simulation(spec, reps, threads)
    t = report.statistics
    p = _two_sided_tail(t, report.df)
    return float(np.mean(p < alpha))
