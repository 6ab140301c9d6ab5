"""Sign-pattern autocorrelations of the Mobius and Liouville functions.

The package sieves mu and lambda over large ranges, accumulates shifted
autocorrelation sums and Mertens-type summatory ladders with exact
integer bookkeeping, expands the shift-1 sum over divisor pairs with
rational arithmetic, measures arithmetic-progression count errors and a
large-sieve variance functional, and fits decay models to the measured
ladders.  A command-line front end (`mobcorr`) exposes the same
operations with JSON and CSV output plus optional PNG figures.
"""

from .cache import read_block, write_block
from .correlation import CorrelationSeries, autocorrelation, normalized_series
from .decay import (
    ALL_MODELS,
    EXP_SQRT_LOG,
    EXP_SQRT_LOG_UNNORMALIZED,
    INV_SQRT_LOGLOG,
    DecayFit,
    DegenerateDataError,
    compare_models,
    fit_decay,
    model_value,
    synthetic_points,
)
from .decomposition import (
    CapabilityError,
    DecompositionReport,
    corrected_pair_expansion,
    decomposition_report,
    pair_count,
    pair_expansion,
    r0_term,
    r1_term,
)
from .identities import (
    IdentityCheck,
    IdentityReport,
    coprime_indicator,
    geometric_root_sum,
    ramanujan_sum,
    verify_identities,
)
from .progressions import (
    APCountError,
    LargeSieveReport,
    ap_count,
    ap_error_profile,
    large_sieve_functional,
)
from .sieve import (
    LIOUVILLE,
    MOBIUS,
    MobiusBlock,
    SummatoryPoint,
    liouville_at,
    mertens,
    mobius_at,
    sieve_block,
    sieve_values,
    summatory_ladder,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_MODELS",
    "APCountError",
    "CapabilityError",
    "CorrelationSeries",
    "DecayFit",
    "DecompositionReport",
    "DegenerateDataError",
    "EXP_SQRT_LOG",
    "EXP_SQRT_LOG_UNNORMALIZED",
    "INV_SQRT_LOGLOG",
    "IdentityCheck",
    "IdentityReport",
    "LIOUVILLE",
    "LargeSieveReport",
    "MOBIUS",
    "MobiusBlock",
    "SummatoryPoint",
    "ap_count",
    "ap_error_profile",
    "autocorrelation",
    "compare_models",
    "coprime_indicator",
    "corrected_pair_expansion",
    "decomposition_report",
    "fit_decay",
    "geometric_root_sum",
    "large_sieve_functional",
    "liouville_at",
    "mertens",
    "mobius_at",
    "model_value",
    "normalized_series",
    "pair_count",
    "pair_expansion",
    "r0_term",
    "r1_term",
    "ramanujan_sum",
    "read_block",
    "sieve_block",
    "sieve_values",
    "summatory_ladder",
    "synthetic_points",
    "verify_identities",
    "write_block",
]
