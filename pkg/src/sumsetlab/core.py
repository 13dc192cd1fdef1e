"""Restricted subset sums and subsequence sums.

For a set ``A`` of ``k`` integers and ``0 <= alpha <= k``::

    at-least:  { s(B) : B subset of A, |B| >= alpha }
    at-most:   { s(B) : B subset of A, |B| <= k - alpha }

and likewise for a sequence with multiplicities, where a subsequence is a
multiplicity vector ``0 <= c_i <= r_i`` and its length is ``sum(c_i)``.

The fast path is a dynamic program that keeps one reachability bitset per
subset size; the sums of any size window are then a union of classes.  A
separate brute-force enumerator is kept as an independent oracle.
"""

from __future__ import annotations

import bisect
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import AlphaRangeError, CapacityError, ConsistencyError

AT_LEAST = "at-least"
AT_MOST = "at-most"
VARIANTS = (AT_LEAST, AT_MOST)

POSITIVE = "positive"
WITH_ZERO = "with-zero"
GENERAL = "general"

# n * max|a_i| must stay below this so every partial sum fits in int64 with room.
SUM_LIMIT = 1 << 62
# Widest sum range handled with bitsets; wider inputs fall back to hash sets.
BITSET_SPAN_LIMIT = 1 << 24
BRUTE_FORCE_CAP = 1 << 24


def _regime(first: int, k: int) -> str:
    if first > 0:
        return POSITIVE
    if first == 0 and k >= 2:
        return WITH_ZERO
    return GENERAL


def _check_int(name: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    return value


def _check_capacity(length: int, values: Sequence[int]) -> None:
    if length * max(abs(v) for v in values) >= SUM_LIMIT:
        raise CapacityError(
            f"partial sums may exceed the 64-bit range (length {length}, "
            f"max |term| {max(abs(v) for v in values)})"
        )


@dataclass(frozen=True)
class IntSet:
    """A nonempty set of distinct integers, stored in increasing order."""

    elements: tuple[int, ...]

    def __init__(self, elements: Iterable[int]):
        values = [_check_int("element", v) for v in elements]
        if not values:
            raise ValueError("an IntSet needs at least one element")
        counts = Counter(values)
        dupes = sorted(v for v, c in counts.items() if c > 1)
        if dupes:
            raise ValueError(f"duplicate elements {dupes}; a set has distinct elements")
        values.sort()
        _check_capacity(len(values), values)
        object.__setattr__(self, "elements", tuple(values))

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def total(self) -> int:
        return sum(self.elements)

    @property
    def regime(self) -> str:
        return _regime(self.elements[0], self.k)

    @property
    def terms(self) -> tuple[int, ...]:
        return self.elements

    @property
    def reps(self) -> tuple[int, ...]:
        return (1,) * self.k

    @property
    def n(self) -> int:
        return self.k

    def dilate(self, d: int) -> "IntSet":
        if d <= 0:
            raise ValueError("dilation factor must be positive")
        return IntSet(d * a for a in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return self.k


@dataclass(frozen=True)
class MultiSeq:
    """A sequence of ``k`` distinct terms, term ``i`` repeated ``reps[i]`` times."""

    terms: tuple[int, ...]
    reps: tuple[int, ...]

    def __init__(self, terms: Iterable[int], reps: Iterable[int]):
        terms = tuple(_check_int("term", t) for t in terms)
        reps = tuple(_check_int("repetition", r) for r in reps)
        if not terms:
            raise ValueError("a MultiSeq needs at least one term")
        if len(terms) != len(reps):
            raise ValueError(f"{len(terms)} terms but {len(reps)} repetitions")
        if any(b <= a for a, b in zip(terms, terms[1:])):
            raise ValueError(f"terms must be strictly increasing, got {list(terms)}")
        if any(r < 1 for r in reps):
            raise ValueError(f"repetitions must be positive, got {list(reps)}")
        _check_capacity(sum(reps), terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "reps", reps)

    @classmethod
    def from_multiset(cls, values: Iterable[int]) -> "MultiSeq":
        """Build from an unsorted multiset literal such as ``[3, 1, 3, 2]``."""
        counts = Counter(_check_int("term", v) for v in values)
        terms = sorted(counts)
        return cls(terms, [counts[t] for t in terms])

    @classmethod
    def from_set(cls, s: IntSet) -> "MultiSeq":
        return cls(s.elements, s.reps)

    @property
    def k(self) -> int:
        return len(self.terms)

    @property
    def n(self) -> int:
        return sum(self.reps)

    @property
    def total(self) -> int:
        return sum(a * r for a, r in zip(self.terms, self.reps))

    @property
    def regime(self) -> str:
        return _regime(self.terms[0], self.k)

    def dilate(self, d: int) -> "MultiSeq":
        if d <= 0:
            raise ValueError("dilation factor must be positive")
        return MultiSeq((d * a for a in self.terms), self.reps)

    def expanded(self) -> list[int]:
        return [a for a, r in zip(self.terms, self.reps) for _ in range(r)]


Summable = Union[IntSet, MultiSeq]


@dataclass(frozen=True)
class SumSet:
    """Sorted distinct sums plus where they came from."""

    values: tuple[int, ...]
    variant: str
    alpha: int
    source_total: int

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        values = tuple(self.values)
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("SumSet values must be strictly increasing")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __contains__(self, x: object) -> bool:
        i = bisect.bisect_left(self.values, x)
        return i < len(self.values) and self.values[i] == x

    def issubset(self, other: "SumSet") -> bool:
        return set(self.values) <= set(other.values)

    def to_dict(self) -> dict:
        return {
            "values": list(self.values),
            "cardinality": len(self.values),
            "variant": self.variant,
            "alpha": self.alpha,
            "source_total": self.source_total,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SumSet":
        return cls(
            values=tuple(data["values"]),
            variant=data["variant"],
            alpha=data["alpha"],
            source_total=data["source_total"],
        )


def _pairs(obj: Summable) -> list[tuple[int, int]]:
    return list(zip(obj.terms, obj.reps))


def _check_alpha(alpha: int, n: int) -> int:
    _check_int("alpha", alpha)
    if not 0 <= alpha <= n:
        raise AlphaRangeError(f"alpha={alpha} outside [0, {n}]")
    return alpha


def _size_window(variant: str, alpha: int, n: int) -> tuple[int, int]:
    if variant == AT_LEAST:
        return alpha, n
    if variant == AT_MOST:
        return 0, n - alpha
    raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


class _Reach:
    """Sums reachable with exactly ``c`` chosen items, for every ``c``.

    Dense mode keeps a Python int per class, bit ``s - lo`` set when sum ``s``
    is reachable.  Sparse mode keeps a set of sums per class and is used only
    when the sum range is too wide for bitsets.
    """

    def __init__(self, pairs: Sequence[tuple[int, int]]):
        n = sum(r for _, r in pairs)
        lo = sum(a * r for a, r in pairs if a < 0)
        hi = sum(a * r for a, r in pairs if a > 0)
        self.lo = lo
        self.dense = hi - lo < BITSET_SPAN_LIMIT
        placed = 0
        if self.dense:
            classes = [0] * (n + 1)
            classes[0] = 1 << -lo
            for a, r in pairs:
                for _ in range(r):
                    placed += 1
                    # descend so each item joins a subset at most once per pass
                    for c in range(placed, 0, -1):
                        prev = classes[c - 1]
                        if prev:
                            classes[c] |= prev << a if a >= 0 else prev >> -a
        else:
            classes = [set() for _ in range(n + 1)]
            classes[0].add(0)
            for a, r in pairs:
                for _ in range(r):
                    placed += 1
                    for c in range(placed, 0, -1):
                        if classes[c - 1]:
                            classes[c].update(s + a for s in classes[c - 1])
        self.classes = classes

    def window(self, c_min: int, c_max: int):
        if self.dense:
            acc = 0
            for c in range(c_min, c_max + 1):
                acc |= self.classes[c]
            return acc
        acc = set()
        for c in range(c_min, c_max + 1):
            acc |= self.classes[c]
        return acc

    def values(self, c_min: int, c_max: int) -> list[int]:
        acc = self.window(c_min, c_max)
        if not self.dense:
            return sorted(acc)
        bits = bin(acc)[:1:-1]
        lo = self.lo
        return [i + lo for i, ch in enumerate(bits) if ch == "1"]

    def suffix_counts(self) -> list[int]:
        """``|at-least sums|`` for alpha = 0..n, built from the top class down."""
        n = len(self.classes) - 1
        out = [0] * (n + 1)
        acc = 0 if self.dense else set()
        for alpha in range(n, -1, -1):
            if self.dense:
                acc |= self.classes[alpha]
                out[alpha] = acc.bit_count()
            else:
                acc |= self.classes[alpha]
                out[alpha] = len(acc)
        return out


def _dp_sums(obj: Summable, alpha: int, variant: str) -> SumSet:
    n = obj.n
    _check_alpha(alpha, n)
    c_min, c_max = _size_window(variant, alpha, n)
    values = _Reach(_pairs(obj)).values(c_min, c_max)
    return SumSet(tuple(values), variant, alpha, obj.total)


def subset_sums_at_least(A: IntSet, alpha: int) -> SumSet:
    """Sums of all subsets of ``A`` with at least ``alpha`` elements."""
    return _dp_sums(A, alpha, AT_LEAST)


def subset_sums_at_most(A: IntSet, alpha: int) -> SumSet:
    """Sums of all subsets of ``A`` with at most ``k - alpha`` elements."""
    return _dp_sums(A, alpha, AT_MOST)


def subseq_sums_at_least(S: MultiSeq, alpha: int) -> SumSet:
    """Sums of all subsequences of ``S`` of length at least ``alpha``."""
    return _dp_sums(S, alpha, AT_LEAST)


def subseq_sums_at_most(S: MultiSeq, alpha: int) -> SumSet:
    """Sums of all subsequences of ``S`` of length at most ``n - alpha``."""
    return _dp_sums(S, alpha, AT_MOST)


def restricted_sums(obj: Summable, alpha: int, variant: str = AT_LEAST) -> SumSet:
    """Dispatch to the DP for either input kind and either variant."""
    return _dp_sums(obj, alpha, variant)


def cardinality_profile(obj: Summable) -> list[int]:
    """``[|at-least sums| for alpha in 0..n]`` from a single DP pass."""
    return _Reach(_pairs(obj)).suffix_counts()


def brute_force_sums(
    obj: Summable, alpha: int, variant: str = AT_LEAST, cap: int = BRUTE_FORCE_CAP
) -> SumSet:
    """Reference oracle: enumerate every subset or multiplicity vector."""
    n = obj.n
    _check_alpha(alpha, n)
    c_min, c_max = _size_window(variant, alpha, n)
    sums = set()
    if isinstance(obj, IntSet):
        if 2 ** obj.k > cap:
            raise CapacityError(f"2^{obj.k} subsets exceed the enumeration cap {cap}")
        for size in range(c_min, c_max + 1):
            for subset in itertools.combinations(obj.elements, size):
                sums.add(sum(subset))
    else:
        count = 1
        for r in obj.reps:
            count *= r + 1
        if count > cap:
            raise CapacityError(f"{count} multiplicity vectors exceed the enumeration cap {cap}")
        for mult in itertools.product(*(range(r + 1) for r in obj.reps)):
            if c_min <= sum(mult) <= c_max:
                sums.add(sum(c * a for c, a in zip(mult, obj.terms)))
    return SumSet(tuple(sorted(sums)), variant, alpha, obj.total)


def reflect(sums: SumSet, total: int) -> SumSet:
    """Map every sum ``x`` to ``total - x``; swaps at-least and at-most."""
    if total != sums.source_total:
        raise ConsistencyError(
            f"reflection total {total} does not match source total {sums.source_total}"
        )
    toggled = AT_MOST if sums.variant == AT_LEAST else AT_LEAST
    values = tuple(sorted(total - x for x in sums.values))
    return SumSet(values, toggled, sums.alpha, total)
