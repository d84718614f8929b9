import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ptchain.chain_model import CouplingVector
from ptchain.geometry import eep_squares

dims = st.integers(min_value=2, max_value=11)


def rational_squares(N, rng, scale=Fraction(6, 5), den=10**6):
    """Uniform rational g_k^2 in [0, scale (N - k) k]."""
    return [scale * top * Fraction(rng.randint(0, den), den) for top in eep_squares(N)]


@st.composite
def coupling_vectors(draw, exact=False, n=None):
    N = draw(dims) if n is None else n
    J = N // 2
    if exact:
        sq = [draw(st.fractions(min_value=0, max_value=Fraction(6, 5) * t, max_denominator=1000)) for t in eep_squares(N)]
        return CouplingVector.from_squares(N, sq)
    g = draw(st.lists(st.floats(-6, 6, allow_nan=False), min_size=J, max_size=J))
    return CouplingVector(N, g)


@pytest.fixture
def rng():
    return random.Random(20240611)
