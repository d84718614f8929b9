import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ptchain import CouplingVector, dispatch, numeric_spectrum, oracle_verdict
from ptchain.criteria import DEFAULT_EPSILON, inside_J3
from ptchain.errors import AnsatzDomainError, NoBoundaryFound, ReparametrizationError
from ptchain.geometry import (
    ansatz_gamma,
    ansatz_to_couplings,
    boundary_bisect,
    confluence_surface_N6,
    dep_condition,
    dep_solve_N6,
    eep_point,
    eep_squares,
    minus_R_factored,
    n6_coefficients,
    reparam_J3,
    window_lower,
    window_series,
    window_upper,
)
from ptchain.oracle import classify_form, sturm_classify
from ptchain.secular import SecularForm, secular_form
from ptchain.verdict import State

small_fractions = st.fractions(0, 1, max_denominator=1000)


# --- EEP ---


@pytest.mark.parametrize("N", range(2, 12))
def test_eep_form_is_pure_power(N):
    p = eep_point(N)
    J = N // 2
    assert p.form.raw == (0,) * J + (1,)
    assert p.squares == eep_squares(N)


def test_eep_examples():
    assert eep_point(2).g.squares == (1,)
    assert eep_point(4).g.squares == (3, 4)
    assert eep_point(6).g.squares == (5, 8, 9)
    assert np.allclose(eep_point(6).g.g, (math.sqrt(5), 2 * math.sqrt(2), 3))


def test_unsquared_products_are_not_a_corner_beyond_n2():
    assert eep_point(2).literal_vanishes
    assert not any(eep_point(N).literal_vanishes for N in range(3, 12))


def test_eep_spectrum_collapses():
    rep = numeric_spectrum(eep_point(6).g, method="mpmath")
    assert rep.degeneracy_pattern == (6,)


# --- strong-coupling chart ---


def test_ansatz_at_zero_is_eep():
    assert ansatz_to_couplings(6, 0, (5, -3, 1)).squares == eep_squares(6)


def test_ansatz_gamma_arithmetic():
    assert ansatz_gamma(Fraction(1, 10), 1, 3) == Fraction(111, 1000)
    c = ansatz_to_couplings(6, 0.1, (1, 1, 1))
    assert np.allclose(c.g, [math.sqrt(s * 0.889) for s in (5, 8, 9)])


def test_ansatz_full_step_gives_diagonal():
    c = ansatz_to_couplings(2, 1, (1,))
    assert c.squares == (0,)
    assert dispatch(c).state is State.INSIDE


def test_ansatz_domain_error():
    with pytest.raises(AnsatzDomainError):
        ansatz_to_couplings(4, Fraction(1, 2), (10, 10))
    with pytest.raises(AnsatzDomainError):
        ansatz_to_couplings(4, Fraction(1, 10), (-200, 0))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 11), st.fractions(Fraction(1, 1000), Fraction(1, 20), max_denominator=1000), st.fractions(-2, 2, max_denominator=100))
def test_uniform_chart_direction_is_scaled_corner(N, t, G):
    J = N // 2
    gamma = ansatz_gamma(t, G, J)
    assume(0 < gamma <= 1)
    c = ansatz_to_couplings(N, t, (G,) * J)
    assert oracle_verdict(c).state is State.INSIDE
    assert dispatch(c).state is not State.OUTSIDE
    # spectrum sqrt(gamma) * {-(N-1), ..., N-1}
    f = secular_form(c)
    expected = [gamma * (N - 1 - 2 * k) ** 2 for k in range(J)]
    assert all(f(s) == 0 for s in expected)


@pytest.mark.parametrize(
    "G, state",
    [((0, 0), State.INSIDE), ((0, Fraction(2, 5)), State.INSIDE), ((1, 1), State.INSIDE),
     ((0, Fraction(1, 2)), State.OUTSIDE), ((0, Fraction(-3, 10)), State.OUTSIDE), ((2, 1), State.OUTSIDE)],
)
def test_n4_chart_band(G, state):
    # near the corner, Inside iff -1/4 < G2 - G1 < 4/9
    c = ansatz_to_couplings(4, Fraction(1, 10000), G)
    assert oracle_verdict(c).state is state
    assert dispatch(c).state is state


# --- J = 3 window ---


def test_window_at_q3():
    assert window_upper(3.0) == pytest.approx(2.0)
    assert window_lower(3.0) == 0.0
    assert window_lower(3.0 + 1e-9) == pytest.approx(0.0, abs=1e-8)


def test_window_series_coefficients():
    assert window_series(6) == [0, 0, Fraction(3, 8), Fraction(-1, 8), Fraction(9, 128), Fraction(-3, 64), Fraction(35, 1024)]


def test_window_series_matches_function():
    q = 1e-2
    approx = sum(float(a) * q**n for n, a in enumerate(window_series(6)))
    assert abs(approx - window_upper(q)) < 1e-13


def test_reparam_errors():
    with pytest.raises(ReparametrizationError):
        reparam_J3(1, 1, 0)
    with pytest.raises(ReparametrizationError):
        reparam_J3(-1, -1, 0)


@settings(max_examples=300, deadline=None)
@given(
    st.fractions(Fraction(1, 10), 20, max_denominator=50),
    st.fractions(0, 400, max_denominator=50),
    st.fractions(-1000, 8000, max_denominator=50),
)
def test_window_equals_j3_criterion(P, Q, R):
    assume(P * P - Q > Fraction(1, 100))
    f = SecularForm.from_normalized((P, Q, R))
    v = inside_J3(f)
    w = reparam_J3(P, Q, R)
    assume(abs(v.margin) > 1e-6 and abs(w.margin()) > 1e-9)
    assert w.contains == (v.state is State.INSIDE)


# --- N = 6 ---


@settings(max_examples=100, deadline=None)
@given(st.fractions(0, 3, max_denominator=100), st.fractions(0, 3, max_denominator=100), st.fractions(0, 4, max_denominator=100))
def test_n6_closed_forms_match_determinant(c, b, a):
    f = secular_form(CouplingVector(6, (c, b, a)))
    assert tuple(f.normalized) == tuple(n6_coefficients(c, b, a))
    assert -f.R == minus_R_factored(c * c, b * b, a)


def test_n6_diagonal_values():
    assert n6_coefficients(0, 0, 0) == (Fraction(35, 3), Fraction(259, 3), 225)


def test_confluence_examples():
    f = confluence_surface_N6(Fraction(1, 2), Fraction(1, 2))
    assert f.raw == tuple(SecularForm.from_roots([4, 4, Fraction(25, 4)]).raw)
    g = confluence_surface_N6(Fraction(1, 3), Fraction(1, 3))
    assert all(g(s) == 0 for s in (Fraction(16, 9), Fraction(25, 9)))
    assert sturm_classify(g).has_multiple_root


@given(small_fractions, small_fractions)
def test_confluence_is_boundary(x, y):
    assume(x > 0 and y > 0 and 16 * x * x != 25 * y * y)
    f = confluence_surface_N6(x, y)
    assert classify_form(f).state is State.BOUNDARY


def test_dep_at_unit_c_is_exact():
    p = dep_solve_N6(1)
    assert p.squares == (1, 0, 1)
    assert secular_form(p.couplings).raw == (0, 256, -32, 1)
    assert p.z == pytest.approx(1)
    assert p.on_horizon


@pytest.mark.parametrize("c", [1.2, 2.0, 2.2])
def test_dep_on_horizon(c):
    p = dep_solve_N6(c)
    assert p.on_horizon
    assert p.spectrum.degeneracy_pattern == (2, 2, 2)
    assert secular_form(p.couplings).R == 0
    assert abs(p.residuals["second_condition"]) < 1e-12
    assert abs(p.residuals["3P^2-4Q"]) < 1e-12
    # the rational a is within rounding of the curve, so the double root is only
    # approximate; the closed-form test still sees R = 0 at the boundary
    v = dispatch(p.couplings)
    assert v.state is State.BOUNDARY and v.witness == "R >= 0"


@pytest.mark.parametrize("c", [4.0, 6.0, 8.0])
def test_dep_large_c_is_imaginary_pair(c):
    p = dep_solve_N6(c)
    assert p.spectrum.degeneracy_pattern == (2, 2, 2)
    assert p.s_double < 0 and not p.on_horizon
    got = sorted(p.spectrum.energies, key=lambda e: (e.imag, e.real))
    want = sorted(p.energies_expected(), key=lambda e: (e.imag, e.real))
    assert np.allclose(got, want, rtol=1e-8, atol=1e-8 * abs(p.z))


def test_dep_below_threshold_is_none():
    assert dep_solve_N6(0.5) is None


def test_dep_condition_vanishes_on_curve():
    p = dep_solve_N6(Fraction(3, 2))
    c2, b2, _ = p.squares
    assert abs(float(dep_condition(c2, b2, p.a))) < 1e-9


def test_dep_rejects_nonpositive_c():
    with pytest.raises(ValueError):
        dep_solve_N6(0)


# --- ray bisection ---


def test_bisect_n2_n3_endpoints():
    assert boundary_bisect(2, (1,)).r == pytest.approx(1, abs=1e-10)
    assert boundary_bisect(3, (1,)).r == pytest.approx(math.sqrt(2), abs=1e-10)


def test_bisect_through_n4_corner():
    p = boundary_bisect(4, (math.sqrt(3), 2))
    # the corner is a cusp: the rounding of sqrt(3) in the direction shifts the
    # exit point by about the square root of the unit roundoff
    assert p.r == pytest.approx(math.sqrt(7), abs=1e-7)
    assert p.gap_ok


def test_bisect_n10_axis_is_bounded():
    p = boundary_bisect(10, (1, 0, 0, 0, 0))
    assert 0 < p.r < math.sqrt(1.2 * 9)


@pytest.mark.parametrize("N, d", [(5, (1, 2)), (6, (1, 1, 1)), (8, (2, 1, 1, 3))])
def test_bisect_methods_agree(N, d):
    a = boundary_bisect(N, d, tol=1e-10)
    b = boundary_bisect(N, d, tol=1e-10, method="criteria")
    assert a.r == pytest.approx(b.r, abs=1e-6)


def test_bisect_bad_direction():
    with pytest.raises(ValueError):
        boundary_bisect(4, (0, 0))
    with pytest.raises(ValueError):
        boundary_bisect(4, (1,))
    with pytest.raises(ValueError):
        boundary_bisect(4, (1, 1), method="guess")


def test_no_boundary_error_carries_context():
    err = NoBoundaryFound("x", direction=(1.0,), r_max=2.0)
    assert "x" in str(err)
