import itertools

import pytest

from sumsetlab.core import IntSet, MultiSeq
from sumsetlab.errors import CapacityError, HypothesisError, UnsupportedRegimeError
from sumsetlab.extremal import (
    EXCEPTION,
    EXCEPTION_CATALOGUE,
    INTERVAL_0K1,
    INTERVAL_1K,
    UNSTRUCTURED,
    StructureClass,
    VerificationReport,
    annotate,
    classify_structure,
    enumerate_extremal,
    is_extremal,
    match_exception,
    verify_direct,
    verify_inverse,
)


def inputs(report):
    return sorted({f.input for f in report.extremal_found})


def test_is_extremal_examples():
    assert is_extremal(IntSet([2, 4, 6, 8]), 1)
    assert not is_extremal(IntSet([1, 2, 4, 8]), 0)
    assert is_extremal(IntSet([3, 5, 9]), 2)


def test_is_extremal_rejects_general():
    with pytest.raises(UnsupportedRegimeError):
        is_extremal(IntSet([-2, 3]), 0)
    with pytest.raises(UnsupportedRegimeError):
        match_exception(MultiSeq((-1, 1), (1, 1)), 0)


@pytest.mark.parametrize(
    "elems, kind, d",
    [
        ((3, 6, 9, 12), INTERVAL_1K, 3),
        ((0, 4, 8, 12, 16), INTERVAL_0K1, 4),
        ((1, 2, 3, 5), UNSTRUCTURED, None),
        ((7,), INTERVAL_1K, 7),
        ((-2, -1), UNSTRUCTURED, None),
    ],
)
def test_classify_structure(elems, kind, d):
    assert classify_structure(IntSet(elems)) == StructureClass(kind, d=d)


def test_classify_sequences():
    assert classify_structure(MultiSeq((2, 4, 6), (3, 1, 2))).d == 2
    assert classify_structure(MultiSeq((0, 5), (2, 2))).kind == INTERVAL_0K1


def test_match_exception_examples():
    assert match_exception(IntSet([2, 5, 7]), 1) == "R1iii-sumclosed-k3"
    assert match_exception(MultiSeq((3, 4, 7), (1, 1, 5)), 0) == "R3iii-sumclosed-k3"
    assert match_exception(IntSet([1, 2, 3, 5]), 0) is None
    assert not is_extremal(IntSet([1, 2, 3, 5]), 0)


def test_match_exception_catalogue():
    assert match_exception(IntSet([3, 5, 9]), 2) == "R1i-alpha-ge-k-1"
    assert match_exception(IntSet([3, 5]), 0) == "R1ii-k2"
    assert match_exception(IntSet([0, 3, 7, 9]), 3) == "R2i-alpha-ge-k-1"
    assert match_exception(IntSet([0, 3, 7]), 0) == "R2ii-zero-k3"
    assert match_exception(IntSet([0, 3, 7, 10]), 1) == "R2iii-zero-sumclosed-k4"
    assert match_exception(MultiSeq((1, 5, 6, 9), (2, 1, 1, 2)), 5) == "R3i-alpha-ge-n-1"
    assert match_exception(MultiSeq((2, 7), (1, 4)), 0) == "R3ii-k2-r1-1"
    assert match_exception(MultiSeq((2, 7), (2, 4)), 0) is None
    assert match_exception(MultiSeq((0, 2, 9), (3, 1, 2)), 1) == "R4ii-zero-k3"
    assert match_exception(MultiSeq((0, 2, 3, 5), (2, 1, 1, 4)), 0) == "R4iii-zero-sumclosed-k4"
    assert match_exception(MultiSeq((0, 2, 3, 5), (2, 2, 1, 4)), 0) is None


def test_every_catalogue_match_is_extremal():
    # tags are structural; this checks the catalogue against computation
    seen = set()
    for k in range(1, 5):
        for elems in itertools.combinations(range(0, 9), k):
            A = IntSet(elems)
            if A.regime == "general":
                continue
            for alpha in range(k + 1):
                tag = match_exception(A, alpha)
                if tag:
                    seen.add(tag)
                    assert is_extremal(A, alpha), (elems, alpha, tag)
        for reps in itertools.product((1, 2, 3), repeat=k):
            for terms in itertools.combinations(range(0, 7), k):
                S = MultiSeq(terms, reps)
                if S.regime == "general":
                    continue
                for alpha in range(S.n + 1):
                    tag = match_exception(S, alpha)
                    if tag:
                        seen.add(tag)
                        assert is_extremal(S, alpha), (terms, reps, alpha, tag)
    assert seen == set(EXCEPTION_CATALOGUE)


def test_annotate_precedence():
    s = annotate(IntSet([1, 2, 3]), 0)
    assert (s.kind, s.d, s.exception) == (INTERVAL_1K, 1, "R1iii-sumclosed-k3")
    s = annotate(IntSet([2, 5, 7]), 0)
    assert (s.kind, s.exception, s.witness) == (EXCEPTION, "R1iii-sumclosed-k3", (2, 5))


def test_enumerate_extremal_examples():
    r = enumerate_extremal(3, 0, 10)
    assert len(r.extremal_found) == 20
    assert all(f.input[2] == f.input[0] + f.input[1] for f in r.extremal_found)
    assert inputs(enumerate_extremal(4, 2, 12)) == [(1, 2, 3, 4), (2, 4, 6, 8), (3, 6, 9, 12)]
    r = enumerate_extremal(2, 0, 5)
    assert r.total_candidates == 10 and len(r.extremal_found) == 10


def test_enumerate_lexicographic_order():
    r = enumerate_extremal(3, [0, 1], 8)
    keys = [(f.input, f.alpha) for f in r.extremal_found]
    assert keys == sorted(keys)


def test_verify_inverse_examples():
    for alpha in (0, 1, 2):
        r = verify_inverse(4, alpha, 12)
        assert r.verdict == "theorem-confirmed" and not r.counterexamples
    r = verify_inverse(5, 0, 12, "with-zero")
    assert r.verdict == "theorem-confirmed"
    assert inputs(r) == [(0, 1, 2, 3, 4), (0, 2, 4, 6, 8), (0, 3, 6, 9, 12)]


def test_unit_reps_match_set_verdict():
    as_set = verify_inverse(4, 1, 10)
    as_seq = verify_inverse((1, 1, 1, 1), 1, 10)
    assert as_set.verdict == as_seq.verdict
    assert inputs(as_set) == inputs(as_seq)


@pytest.mark.parametrize(
    "shape, alpha, regime",
    [(3, 0, "positive"), (4, 3, "positive"), (4, 0, "with-zero"), (5, 4, "with-zero"), ((1, 1, 2), 0, "positive"), ((1, 1, 1, 2), 4, "positive"), ((1, 1, 1, 1), 0, "with-zero")],
)
def test_verify_inverse_hypotheses(shape, alpha, regime):
    with pytest.raises(HypothesisError):
        verify_inverse(shape, alpha, 10, regime)


def test_with_zero_sequence_top_alpha_is_flagged():
    reps = (1, 1, 1, 2, 1)
    clean = verify_inverse(reps, range(0, 5), 8, "with-zero")
    assert clean.verdict == "theorem-confirmed" and not clean.notes
    top = verify_inverse(reps, 5, 8, "with-zero")
    assert top.counterexamples and all(f.structure.exception == "R4i-alpha-ge-n-1" for f in top.counterexamples)
    assert top.notes and top.notes[0].startswith("boundary-ambiguous")


def test_verify_direct_examples():
    for k in range(1, 6):
        assert verify_direct(k, None, 10).verdict == "theorem-confirmed"
    r = verify_direct((2, 2), None, 8)
    assert r.verdict == "theorem-confirmed" and r.total_checks == 28 * 5
    r = verify_direct(1, [0, 1], 6)
    assert not r.counterexamples


def test_regime_and_cap_errors():
    with pytest.raises(UnsupportedRegimeError):
        enumerate_extremal(3, 0, 10, "general")
    with pytest.raises(CapacityError):
        enumerate_extremal(5, 0, 30, cap=1000)


def test_catalogue_adequacy_small_universe():
    for regime in ("positive", "with-zero"):
        for k in range(2 if regime == "with-zero" else 1, 6):
            r = enumerate_extremal(k, None, 9, regime)
            assert not r.anomalies and not r.counterexamples
        for k in range(2, 4):
            for reps in itertools.product((1, 2, 3), repeat=k):
                r = enumerate_extremal(reps, None, 7, regime)
                assert not r.anomalies and not r.counterexamples, reps


def test_interval_inputs_are_extremal_for_every_alpha():
    for k in range(1, 7):
        for d in (1, 2, 5):
            A = IntSet(range(d, d * k + 1, d))
            assert classify_structure(A).kind == INTERVAL_1K
            assert all(is_extremal(A, a) for a in range(k + 1))
    for reps in itertools.product((1, 2, 3), repeat=3):
        S = MultiSeq((3, 6, 9), reps)
        assert all(is_extremal(S, a) for a in range(S.n + 1))


def test_dilation_invariance_of_extremality():
    for elems in itertools.combinations(range(0, 9), 4):
        A = IntSet(elems)
        if A.regime == "general":
            continue
        for alpha in range(5):
            assert is_extremal(A, alpha) == is_extremal(A.dilate(3), alpha)


def test_report_round_trip_and_worker_independence():
    serial = verify_inverse((2, 1, 1, 2), range(0, 5), 8, workers=1)
    parallel = verify_inverse((2, 1, 1, 2), range(0, 5), 8, workers=3)
    assert serial == parallel
    assert VerificationReport.from_dict(serial.to_dict()) == serial
    explored = enumerate_extremal(3, [0, 1], 10, workers=2)
    assert VerificationReport.from_dict(explored.to_dict(timing=True)) == explored
