"""Restricted subset/subsequence sums, their minimum-size bounds, and extremal structure."""

from .bounds import (
    AlphaIndex,
    BoundReport,
    bound_for,
    lower_bound_seq_positive,
    lower_bound_seq_with_zero,
    lower_bound_set_positive,
    lower_bound_set_with_zero,
    m_index,
)
from .core import (
    AT_LEAST,
    AT_MOST,
    IntSet,
    MultiSeq,
    SumSet,
    brute_force_sums,
    cardinality_profile,
    reflect,
    restricted_sums,
    subseq_sums_at_least,
    subseq_sums_at_most,
    subset_sums_at_least,
    subset_sums_at_most,
)
from .errors import (
    AlphaRangeError,
    CapacityError,
    ConsistencyError,
    HypothesisError,
    SumsetError,
    UnsupportedRegimeError,
)
from .extremal import (
    StructureClass,
    VerificationReport,
    classify_structure,
    enumerate_extremal,
    is_extremal,
    match_exception,
    verify_direct,
    verify_inverse,
)

__version__ = "0.1.0"
