from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from ptchain import CouplingVector, build_chain, numeric_spectrum, oracle_verdict, sturm_classify
from ptchain.oracle import SpectrumClass, classify_form
from ptchain.secular import SecularForm, secular_form
from ptchain.verdict import State

from conftest import coupling_vectors, rational_squares


def test_single_positive_root():
    cert = sturm_classify([-1, 1])
    assert cert.n_nonneg_real_roots == 1
    assert not cert.has_multiple_root


def test_sample_cubic_has_one_real_root_of_three():
    cert = sturm_classify([-2, 1, -2, 1])  # (s^2 + 1)(s - 2)
    assert cert.n_nonneg_real_roots == 1
    assert classify_form(SecularForm.from_raw([-2, 1, -2, 1])).state is State.OUTSIDE


def test_double_root_with_zero_is_boundary():
    raw = [0, 256, -32, 1]  # s (s - 16)^2
    cert = sturm_classify(raw)
    assert cert.n_nonneg_real_roots == 2
    assert cert.has_multiple_root and cert.has_root_at_zero
    assert dict(cert.multiplicities) == {1: 1, 2: 1}
    assert classify_form(SecularForm.from_raw(raw)).state is State.BOUNDARY


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        sturm_classify([0, 0])


def test_negative_root_is_outside():
    assert classify_form(SecularForm.from_roots([-1, 4])).state is State.OUTSIDE


@pytest.mark.parametrize(
    "N, squares, state",
    [
        (2, (1,), State.BOUNDARY),
        (4, (3, 4), State.BOUNDARY),
        (6, (1, 1, 1), State.INSIDE),
        (2, (Fraction(1, 4),), State.INSIDE),
        (3, (3,), State.OUTSIDE),
        (4, (4, 0), State.OUTSIDE),
    ],
)
def test_oracle_examples(N, squares, state):
    assert oracle_verdict(CouplingVector.from_squares(N, squares)).state is state


def test_eep_n4_has_full_multiplicity():
    cert = sturm_classify(secular_form(CouplingVector.from_squares(4, (3, 4))))
    assert cert.multiplicities == ((2, 1),)


def test_diagonal_n6_energies():
    rep = numeric_spectrum(CouplingVector(6, (0, 0, 0)))
    assert np.allclose(sorted(e.real for e in rep.energies), [-5, -3, -1, 1, 3, 5])
    assert rep.classification is SpectrumClass.ALL_REAL_SIMPLE


def test_nilpotent_two_level_energies():
    rep = numeric_spectrum(CouplingVector(2, (1,)))
    assert np.allclose(rep.energies, [0, 0])
    assert rep.degeneracy_pattern == (2,)


@settings(max_examples=60, deadline=None)
@given(coupling_vectors())
def test_spectrum_matches_eigvals(c):
    rep = numeric_spectrum(c)
    if rep.classification is not SpectrumClass.ALL_REAL_SIMPLE or rep.min_root_gap < 1e-3:
        return  # clustered eigenvalues are too ill-conditioned for a dense solver comparison
    ev = np.sort_complex(np.linalg.eigvals(build_chain(c).dense))
    assert np.allclose(np.sort(ev.real), np.sort([e.real for e in rep.energies]), atol=1e-7)


@settings(max_examples=60, deadline=None)
@given(coupling_vectors())
def test_energies_closed_under_negation(c):
    e = np.array(numeric_spectrum(c).energies)
    assert np.allclose(np.sort_complex(e), np.sort_complex(-e), atol=1e-10 * max(1.0, abs(e).max()))


def test_oracle_matches_numeric_on_clear_points(rng):
    for N in range(2, 12):
        for _ in range(40):
            c = CouplingVector.from_squares(N, rational_squares(N, rng))
            rep = numeric_spectrum(c)
            v = oracle_verdict(c)
            if rep.min_root_gap < 1e-4 or abs(rep.min_root) < 1e-6:
                continue
            real = rep.classification is SpectrumClass.ALL_REAL_SIMPLE
            assert real == (v.state is State.INSIDE), (N, c.squares)
