"""Exact circular gap statistics for low-discrepancy sequences.

The package generates three classical point sequences on the unit circle
(base-b digit reversal, golden-ratio rotations, base-2 logarithms of odd
integers), computes their circular gap statistics in exact arithmetic, and
machine-checks the combinatorial structure behind their short-interval
regularity.
"""

from .exactnum import (
    PHI,
    SQRT5,
    CircleValue,
    FixedReal,
    GoldenNumber,
    Rational,
    golden_frac,
    golden_sign,
    rational_compare,
)
from .sequences import (
    DEBRUIJN_LOG,
    KRONECKER_PHI,
    VDC2,
    DeBruijnErdosLog,
    DuplicatePoint,
    KroneckerGolden,
    PrecisionWarning,
    Prefix,
    SequenceKind,
    VanDerCorput,
    build_prefix,
    kind_token,
    parse_kind,
    radical_inverse,
    sequence_point,
)
from .stats import (
    DiscrepancyReport,
    GapVector,
    InvalidWindow,
    PairCorrelationReport,
    WindowReport,
    gap_vector,
    local_discrepancy,
    pair_correlation,
    window_extremes,
)
from .verifiers import (
    CanonicalInterval,
    ElementMatching,
    InvalidRange,
    MalformedBits,
    ZeckendorfDecomposition,
    build_element_matching,
    fibonacci,
    fibonacci_prefix_deviation,
    split_index,
    verify_extremal_windows,
    verify_self_similarity,
    verify_shift_monotonicity,
    verify_split_precedence,
    zeckendorf,
)
from .experiments import (
    FitResult,
    InsufficientData,
    LogExtremeConstants,
    SweepConfig,
    fit_constant,
    log_gap_extremes,
    run_discrepancy_sweep,
    run_paircorr_sweep,
    run_ratio_sweep,
    verify_all,
)

__version__ = "0.1.0"
