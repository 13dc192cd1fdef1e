"""Closed-form minimum cardinalities of restricted sumsets.

Everything here is exact integer arithmetic.  The set formulas are special
cases of the sequence formulas at ``reps = (1, ..., 1)``; the uniform-reps
and unrestricted (``alpha = 0``) forms are kept as separate functions so the
specialisations can be cross-checked against each other.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb
from typing import Optional, Sequence

from .core import (
    GENERAL,
    POSITIVE,
    IntSet,
    MultiSeq,
    Summable,
    cardinality_profile,
)
from .errors import AlphaRangeError, UnsupportedRegimeError

SET = "set"
SEQUENCE = "sequence"


@dataclass(frozen=True)
class AlphaIndex:
    """Block of the sorted sequence in which the ``alpha``-th term falls.

    ``prefix_below <= alpha < prefix_at`` where the prefixes are the
    repetition counts of the first ``m - 1`` and ``m`` terms.
    """

    m: int
    prefix_below: int
    prefix_at: int
    boundary: bool


def _check_reps(reps: Sequence[int]) -> tuple[int, ...]:
    reps = tuple(reps)
    if not reps or any(r < 1 for r in reps):
        raise ValueError(f"repetitions must be a nonempty list of positive integers, got {list(reps)}")
    return reps


def m_index(reps: Sequence[int], alpha: int) -> AlphaIndex:
    reps = _check_reps(reps)
    n = sum(reps)
    if not 0 <= alpha < n:
        raise AlphaRangeError(
            f"alpha={alpha} outside [0, {n - 1}]; at alpha = n the sumset is a single value"
        )
    below = 0
    for m, r in enumerate(reps, start=1):
        if alpha < below + r:
            return AlphaIndex(m, below, below + r, alpha == below)
        below += r
    raise AssertionError("unreachable: alpha < n guarantees a block")


def _check_set_alpha(k: int, alpha: int) -> None:
    if not 0 <= alpha <= k:
        raise AlphaRangeError(f"alpha={alpha} outside [0, {k}]")


def lower_bound_set_positive(k: int, alpha: int) -> int:
    """``k(k+1)/2 - alpha(alpha+1)/2 + 1`` for a set of ``k`` positive integers."""
    if k < 1:
        raise AlphaRangeError(f"k must be at least 1, got {k}")
    _check_set_alpha(k, alpha)
    return k * (k + 1) // 2 - alpha * (alpha + 1) // 2 + 1


def lower_bound_set_with_zero(k: int, alpha: int) -> int:
    """``(k-1)k/2 - (alpha-1)alpha/2 + 1`` for ``k`` nonnegative integers containing 0."""
    if k < 2:
        raise AlphaRangeError(f"k must be at least 2 when 0 is an element, got {k}")
    _check_set_alpha(k, alpha)
    return (k - 1) * k // 2 - (alpha - 1) * alpha // 2 + 1


def lower_bound_seq_positive(reps: Sequence[int], alpha: int) -> int:
    reps = _check_reps(reps)
    idx = m_index(reps, alpha)
    m = idx.m
    weighted = sum(i * r for i, r in enumerate(reps, start=1))
    weighted_head = sum(i * r for i, r in enumerate(reps[:m], start=1))
    return weighted - weighted_head + m * (idx.prefix_at - alpha) + 1


def lower_bound_seq_with_zero(reps: Sequence[int], alpha: int) -> int:
    reps = _check_reps(reps)
    if len(reps) < 2:
        raise AlphaRangeError("a sequence containing 0 needs at least 2 distinct terms")
    idx = m_index(reps, alpha)
    m = idx.m
    weighted = sum((i - 1) * r for i, r in enumerate(reps, start=1))
    weighted_head = sum((i - 1) * r for i, r in enumerate(reps[:m], start=1))
    return weighted - weighted_head + (m - 1) * (idx.prefix_at - alpha) + 1


# Specialised closed forms, used to cross-check the general formulas.

def subset_sum_bound_positive(k: int) -> int:
    """Unrestricted subset sums of ``k`` positive integers: ``k(k+1)/2 + 1``."""
    return k * (k + 1) // 2 + 1


def subset_sum_bound_with_zero(k: int) -> int:
    return (k - 1) * k // 2 + 1


def _uniform_m(k: int, r: int, alpha: int) -> int:
    if not 0 <= alpha < r * k:
        raise AlphaRangeError(f"alpha={alpha} outside [0, {r * k - 1}]")
    return alpha // r + 1


def uniform_seq_bound_positive(k: int, r: int, alpha: int) -> int:
    """``k`` positive terms each repeated ``r`` times."""
    m = _uniform_m(k, r, alpha)
    return r * (k * (k + 1) // 2 - m * (m + 1) // 2) + m * (m * r - alpha) + 1


def uniform_seq_bound_with_zero(k: int, r: int, alpha: int) -> int:
    """``k`` nonnegative terms, 0 among them, each repeated ``r`` times.

    The head term is ``r[(k-1)k/2 - (m-1)m/2]``: the zero term contributes no
    weight, which is what the general with-zero formula reduces to.
    """
    m = _uniform_m(k, r, alpha)
    return r * ((k - 1) * k // 2 - (m - 1) * m // 2) + (m - 1) * (m * r - alpha) + 1


def uniform_subseq_sum_bound_positive(k: int, r: int) -> int:
    return r * comb(k + 1, 2) + 1


def uniform_subseq_sum_bound_with_zero(k: int, r: int) -> int:
    return r * comb(k, 2) + 1


@dataclass
class BoundReport:
    regime: str
    object: str
    k: int
    alpha: int
    bound: int
    n: Optional[int] = None
    m: Optional[int] = None
    achieved: Optional[int] = None
    extremal: Optional[bool] = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "BoundReport":
        return cls(**data)


def require_supported(obj: Summable) -> str:
    regime = obj.regime
    if regime == GENERAL:
        raise UnsupportedRegimeError(
            "lower bounds cover only positive inputs and nonnegative inputs with 0 as least "
            "element (k >= 2); inputs with negative terms (the Jiang-Li case) or the "
            "singleton {0} are not covered"
        )
    return regime


def bound_value(obj: Summable, alpha: int) -> int:
    """The applicable lower bound for ``obj`` at ``alpha``, without computing sums."""
    regime = require_supported(obj)
    if isinstance(obj, IntSet):
        if regime == POSITIVE:
            return lower_bound_set_positive(obj.k, alpha)
        return lower_bound_set_with_zero(obj.k, alpha)
    if alpha == obj.n:
        return 1
    if regime == POSITIVE:
        return lower_bound_seq_positive(obj.reps, alpha)
    return lower_bound_seq_with_zero(obj.reps, alpha)


def bound_for(obj: Summable, alpha: int, compute: bool = True) -> BoundReport:
    """Evaluate the applicable bound; with ``compute`` also the actual cardinality."""
    regime = require_supported(obj)
    if not 0 <= alpha <= obj.n:
        raise AlphaRangeError(f"alpha={alpha} outside [0, {obj.n}]")
    bound = bound_value(obj, alpha)
    if isinstance(obj, MultiSeq):
        report = BoundReport(regime, SEQUENCE, obj.k, alpha, bound, n=obj.n)
        if alpha < obj.n:
            report.m = m_index(obj.reps, alpha).m
    else:
        report = BoundReport(regime, SET, obj.k, alpha, bound)
    if compute:
        report.achieved = cardinality_profile(obj)[alpha]
        report.extremal = report.achieved == bound
    return report

