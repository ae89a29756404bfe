import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from badsieve.bestapprox import enumerate_best_approx
from badsieve.catalog import get_entry
from badsieve.errors import ConfigError, DegenerateForm
from badsieve.rationals import ThetaForm, dist_to_nearest_int
from badsieve.verify import (
    bad_alpha_beta_score,
    bad_theta_score,
    brute_best_approx,
    linear_form_score,
)

SQRT_PAIR = get_entry("sqrt2-sqrt3").theta


def test_q1_is_plain_distance():
    theta = ThetaForm(Fraction(3, 7), Fraction(2, 9))
    eta = (Fraction(1, 5), Fraction(1, 2))
    rep = bad_theta_score(theta, eta, 1)
    d1 = dist_to_nearest_int(theta.theta1 - eta[0])
    d2 = dist_to_nearest_int(theta.theta2 - eta[1])
    assert rep.score_cubed == max(d1, d2) ** 3
    assert rep.argmin == 1
    assert rep.running_min_trace == ((1, rep.score_cubed),)


def test_eta_on_orbit_scores_zero():
    theta = ThetaForm(Fraction(3, 7), Fraction(2, 9))
    rep = bad_theta_score(theta, (theta.theta1, theta.theta2), 1)
    assert rep.score_cubed == 0
    assert rep.score == 0.0


def test_scan_stops_at_zero():
    # homogeneous score hits an exact 0 at q = 7 for theta1 = 3/7, theta2 = 1/7
    theta = ThetaForm(Fraction(3, 7), Fraction(1, 7))
    rep = bad_alpha_beta_score(theta, 100)
    assert rep.score_cubed == 0
    assert rep.argmin == 7
    assert rep.running_min_trace[-1][0] == 7


def test_bound_must_be_positive():
    with pytest.raises(ConfigError):
        bad_theta_score(SQRT_PAIR, (Fraction(0), Fraction(0)), 0)


def test_monotone_in_Q():
    eta = (Fraction(1, 3), Fraction(1, 7))
    prev = None
    for Q in (1, 5, 25, 125, 625):
        rep = bad_theta_score(SQRT_PAIR, eta, Q)
        if prev is not None:
            assert rep.score_cubed <= prev
        prev = rep.score_cubed


def test_trace_is_strictly_decreasing_records():
    rep = bad_alpha_beta_score(SQRT_PAIR, 10**4)
    positions = [q for q, _ in rep.running_min_trace]
    values = [c for _, c in rep.running_min_trace]
    assert positions == sorted(positions)
    assert positions[0] == 1
    assert all(a > b for a, b in zip(values, values[1:]))
    assert rep.score_cubed == values[-1]
    assert rep.argmin == positions[-1]


@settings(max_examples=40, deadline=None)
@given(
    p1=st.integers(1, 96),
    p2=st.integers(1, 96),
    e1=st.integers(0, 96),
    e2=st.integers(0, 96),
    Q=st.integers(1, 300),
)
def test_cubed_scan_matches_float_reference(p1, p2, e1, e2, Q):
    theta = ThetaForm(Fraction(p1, 97), Fraction(p2, 97))
    eta = (Fraction(e1, 97), Fraction(e2, 97))
    rep = bad_theta_score(theta, eta, Q)
    best = min(
        max(
            q * q * dist_to_nearest_int(q * theta.theta1 - eta[0]) ** 3,
            q * dist_to_nearest_int(q * theta.theta2 - eta[1]) ** 3,
        )
        for q in range(1, Q + 1)
    )
    assert rep.score_cubed == best


def test_liouville_homogeneous_spike():
    theta = get_entry("liouville").theta
    early = bad_alpha_beta_score(theta, 10)
    late = bad_alpha_beta_score(theta, 10**4)
    assert late.score_cubed < early.score_cubed / 10**9


def test_golden_homogeneous_floor():
    theta = get_entry("golden-pair").theta
    rep = bad_alpha_beta_score(theta, 10**4)
    assert rep.score > 0.05


# ----------------------------------------------------------- linear form


def test_linear_form_single_vector():
    seq = enumerate_best_approx(SQRT_PAIR, 1)
    assert [(v.m1, v.m2) for v in seq.vectors] == [(1, 1)]
    rep = linear_form_score(SQRT_PAIR, (Fraction(1, 4), Fraction(1, 4)), seq)
    assert rep.exact_score == Fraction(1, 2)
    assert rep.score_cubed == Fraction(1, 8)
    assert rep.argmin == (1, 1)


def test_linear_form_resonant_eta_is_zero():
    seq = enumerate_best_approx(SQRT_PAIR, 1)
    rep = linear_form_score(SQRT_PAIR, (Fraction(3, 4), Fraction(1, 4)), seq)
    assert rep.exact_score == 0


def test_linear_form_empty_and_mismatched():
    seq0 = enumerate_best_approx(SQRT_PAIR, 0)
    with pytest.raises(ConfigError):
        linear_form_score(SQRT_PAIR, (Fraction(0), Fraction(0)), seq0)
    seq = enumerate_best_approx(SQRT_PAIR, 4)
    other = get_entry("golden-pair").theta
    with pytest.raises(ConfigError):
        linear_form_score(other, (Fraction(0), Fraction(0)), seq)


def test_linear_form_trace_positions_are_heights():
    seq = enumerate_best_approx(SQRT_PAIR, 3600)
    rep = linear_form_score(SQRT_PAIR, (Fraction(17, 64), Fraction(5, 64)), seq)
    heights = {v.height_sq for v in seq.vectors}
    assert all(h in heights for h, _ in rep.running_min_trace)
    assert rep.score_cubed == rep.running_min_trace[-1][1]
    assert rep.exact_score**3 == rep.score_cubed


# ----------------------------------------------------------- brute force


def test_brute_single_record():
    seq = brute_best_approx(SQRT_PAIR, 1)
    assert len(seq.vectors) == 1
    assert (seq.vectors[0].m1, seq.vectors[0].m2) == (1, 1)


def test_brute_degenerate_rational():
    with pytest.raises(DegenerateForm):
        brute_best_approx(ThetaForm(Fraction(2, 5), Fraction(1, 3)), 5)


def test_brute_tie_degenerate():
    # classes (0,1) and (-1,1) both hit distance 1/8 at height 1
    theta = ThetaForm(Fraction(1, 4), Fraction(1, 8))
    with pytest.raises(DegenerateForm):
        brute_best_approx(theta, 16)
