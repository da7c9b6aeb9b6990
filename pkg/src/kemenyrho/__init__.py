"""Kemeny rank correlation: estimator, studentised test and null-distribution harness."""

from .core import (
    CenteredScoreMatrix,
    RankScoreVector,
    ScoreMatrix,
    StandardizedVector,
    build_score_matrix,
    center_score_matrix,
    frobenius_distance_sq,
    rank_score_vector,
    rank_score_vector_fast,
    sign_disagreement_count,
    standardize,
)
from .errors import (
    ConfigError,
    DegenerateInputError,
    FormatError,
    InvalidValueError,
    KemenyError,
    ParseError,
    SizeError,
    UsageError,
)
from .estimators import (
    CorrelationEstimate,
    Method,
    estimate,
    frobenius_cosine,
    kendall_tau_a,
    kendall_tau_b,
    pearson_r,
    rho_kappa,
    spearman_rho,
    ustat_pairwise,
    ustat_rowsum,
)
from .inference import (
    KsResult,
    TestResult,
    kolmogorov_sf,
    ks_one_sample,
    student_t_cdf,
    t_statistic,
    test_correlation,
    test_independence,
)
from .simulate import GeneratorSpec, SimulationReport, generate_pair, quantile_t, run_null_simulation

__version__ = "0.1.0"
