import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from badsieve.bestapprox import (
    BestApproxSequence,
    BestApproxVector,
    audit_growth,
    audit_minkowski,
    canonical_class,
    enumerate_best_approx,
    export_sequence_lines,
    is_best_approximation,
    parse_sequence_lines,
    type_window,
    vector_kind,
)
from badsieve.catalog import get_entry
from badsieve.errors import ConfigError, DegenerateForm, IncompleteSequence
from badsieve.rationals import ThetaForm, weighted_height_sq
from badsieve.verify import brute_best_approx

SQRT_PAIR = get_entry("sqrt2-sqrt3").theta
RATIONAL_PAIR = ThetaForm(Fraction(2, 5), Fraction(1, 3))

# zeta of the height-1 record (1,1) for the 51-digit sqrt pair:
# fractional part of theta1 + theta2
FIRST_ZETA_NUM = 146264369941972342329135065715570445512477129187328


def test_canonical_class():
    assert canonical_class(3, 2) == (3, 2)
    assert canonical_class(-3, -2) == (3, 2)
    assert canonical_class(3, -2) == (-3, 2)
    assert canonical_class(-5, 0) == (5, 0)
    assert canonical_class(5, 0) == (5, 0)
    with pytest.raises(ConfigError):
        canonical_class(0, 0)


def test_kind_tie_goes_to_type2():
    assert vector_kind(5, 2) == 1
    assert vector_kind(4, 2) == 2  # |m1| == m2^2
    assert vector_kind(-4, 2) == 2
    assert vector_kind(1, 0) == 1
    assert vector_kind(0, 1) == 2


def test_first_record_sqrt_pair():
    seq = enumerate_best_approx(SQRT_PAIR, 1)
    assert len(seq.vectors) == 1
    v = seq.vectors[0]
    assert (v.m1, v.m2) == (1, 1)
    assert v.height_sq == 1
    assert v.m0 == -1
    assert v.zeta == Fraction(FIRST_ZETA_NUM, 10**51)
    assert v.kind == 2


def test_bound_zero_is_empty():
    seq = enumerate_best_approx(SQRT_PAIR, 0)
    assert seq.vectors == ()
    assert brute_best_approx(SQRT_PAIR, 0).vectors == ()


@pytest.mark.parametrize("name", ["sqrt2-sqrt3", "golden-pair", "liouville"])
def test_matches_oracle_catalog(name):
    theta = get_entry(name).theta
    fast = enumerate_best_approx(theta, 400)
    slow = brute_best_approx(theta, 400)
    assert fast.vectors == slow.vectors
    fast.validate()


def test_oracle_prefix_stability():
    small = brute_best_approx(SQRT_PAIR, 900)
    large = brute_best_approx(SQRT_PAIR, 3600)
    assert large.vectors[: len(small.vectors)] == small.vectors
    assert all(v.height_sq <= 900 for v in small.vectors)


def test_degenerate_rational_pair_both_ways():
    # 5 * (2/5) is an exact integer, so height 5 kills the run
    for bound in (1, 4):
        fast = enumerate_best_approx(RATIONAL_PAIR, bound)
        slow = brute_best_approx(RATIONAL_PAIR, bound)
        assert fast.vectors == slow.vectors
        assert [(v.m1, v.m2) for v in fast.vectors] == [(-1, 1)]
    with pytest.raises(DegenerateForm):
        enumerate_best_approx(RATIONAL_PAIR, 5)
    with pytest.raises(DegenerateForm):
        brute_best_approx(RATIONAL_PAIR, 5)


@settings(max_examples=40, deadline=None)
@given(
    p1=st.integers(1, 10**9),
    p2=st.integers(1, 10**9),
    bound=st.integers(1, 60),
)
def test_matches_oracle_random_theta(p1, p2, bound):
    q = 2_000_000_011  # prime, so both coordinates are in lowest terms
    theta = ThetaForm(Fraction(p1, q), Fraction(p2, q))
    try:
        fast = enumerate_best_approx(theta, bound)
    except DegenerateForm:
        with pytest.raises(DegenerateForm):
            brute_best_approx(theta, bound)
        return
    slow = brute_best_approx(theta, bound)
    assert fast.vectors == slow.vectors


def test_is_best_matches_sequence_membership():
    seq = enumerate_best_approx(SQRT_PAIR, 100)
    members = {(v.m1, v.m2) for v in seq.vectors}
    checked = 0
    for m2 in range(0, 7):
        for m1 in range(-40, 41):
            if m2 == 0 and m1 <= 0:
                continue
            if weighted_height_sq(m1, m2) > 40:
                continue
            expect = (m1, m2) in members
            assert is_best_approximation(SQRT_PAIR, (m1, m2)) is expect
            checked += 1
    assert checked > 100


def test_is_best_zero_form_value_degenerates():
    with pytest.raises(DegenerateForm):
        is_best_approximation(RATIONAL_PAIR, (5, 0))


def test_audits_clean_on_real_sequences():
    for name in ("sqrt2-sqrt3", "golden-pair", "liouville"):
        seq = enumerate_best_approx(get_entry(name).theta, 2000)
        assert audit_minkowski(seq) == []
        assert audit_growth(seq) == []


def _fake_seq(vectors):
    return BestApproxSequence(theta=SQRT_PAIR, height_sq_max=100, vectors=tuple(vectors))


def test_audit_minkowski_flags_violation():
    a = BestApproxVector(1, 0, 1, 0, 1, Fraction(1, 2), 1)
    b = BestApproxVector(2, 0, 2, 0, 2, Fraction(1, 3), 1)
    # (1/2)^2 * 2^3 = 2 > 1
    assert audit_minkowski(_fake_seq([a, b])) == [(1, 2)]


def test_audit_growth_flags_violation():
    a = BestApproxVector(1, 0, 1, 0, 1, Fraction(1, 2), 1)
    b = BestApproxVector(2, 0, 3, 0, 3, Fraction(1, 3), 1)
    out = audit_growth(_fake_seq([a, b]), step=1)
    assert ("global", 1, 2) in out
    assert ("type1", 1, 2) in out


def test_type_window_matches_filtered_oracle():
    seq = enumerate_best_approx(SQRT_PAIR, 256)
    oracle = brute_best_approx(SQRT_PAIR, 256)
    for kind in (1, 2):
        got = type_window(seq, kind, R=4, n=1)
        want = [
            v for v in oracle.vectors if v.kind == kind and 16 < v.height_sq <= 256
        ]
        assert got == want


def test_type_window_needs_complete_sequence():
    seq = enumerate_best_approx(SQRT_PAIR, 255)
    with pytest.raises(IncompleteSequence):
        type_window(seq, 1, R=4, n=1)


def test_export_parse_roundtrip():
    seq = enumerate_best_approx(SQRT_PAIR, 500)
    text = export_sequence_lines(seq)
    back = parse_sequence_lines(text, SQRT_PAIR, 500)
    assert back == seq
    # stable field order, one object per line
    first = text.splitlines()[0]
    assert first.startswith('{"index":1,"m0":')


def test_parse_rejects_reordered_records():
    seq = enumerate_best_approx(SQRT_PAIR, 500)
    lines = export_sequence_lines(seq).splitlines()
    lines[0], lines[1] = lines[1], lines[0]
    with pytest.raises(ConfigError):
        parse_sequence_lines("\n".join(lines), SQRT_PAIR, 500)
