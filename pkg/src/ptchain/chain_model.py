"""PT-symmetric tridiagonal chain Hamiltonians and the 2x2 reference models.

The chain of dimension ``N`` has the equidistant diagonal
``-(N-1), -(N-3), ..., N-1`` and antisymmetric nearest-neighbour couplings
``+g, -g`` mirrored about the centre, so only ``J = N // 2`` couplings are
free.  Everything downstream depends on the couplings through their squares,
which are kept exact whenever the caller supplies them exactly.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._exact import all_exact, exact, is_exact
from .errors import UnsupportedDimensionError

N_MIN, N_MAX = 2, 11


def check_dimension(N: int) -> int:
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)):
        raise UnsupportedDimensionError(f"dimension must be an integer, got {N!r}")
    if not N_MIN <= N <= N_MAX:
        raise UnsupportedDimensionError(
            f"N={N} is unsupported: closed-form criteria exist only for {N_MIN} <= N <= {N_MAX}"
        )
    return int(N)


@dataclass(frozen=True)
class CouplingVector:
    """A point ``(g_1, ..., g_J)`` in the coupling space of the N-chain.

    ``squares`` holds ``g_k**2``.  When the couplings (or the squares, via
    :meth:`from_squares`) are given as ints/Fractions the squares are exact
    rationals and every downstream computation stays exact.
    """

    N: int
    g: tuple
    squares: tuple = field(default=None, repr=False)

    def __post_init__(self):
        N = check_dimension(self.N)
        object.__setattr__(self, "N", N)
        g = tuple(self.g)
        if len(g) != N // 2:
            raise ValueError(f"N={N} needs J={N // 2} couplings, got {len(g)}")
        if self.squares is None:
            sq = tuple(exact(x) ** 2 if is_exact(x) else float(x) ** 2 for x in g)
        else:
            sq = tuple(self.squares)
            if len(sq) != len(g):
                raise ValueError("squares and couplings differ in length")
        for x in (*g, *sq):
            if not math.isfinite(float(x)):
                raise ValueError(f"non-finite coupling entry {x!r}")
        if any(s < 0 for s in sq):
            raise ValueError("coupling squares must be non-negative")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "squares", sq)

    @classmethod
    def from_squares(cls, N: int, squares, signs=None) -> "CouplingVector":
        sq = tuple(exact(s) if is_exact(s) or isinstance(s, str) else float(s) for s in squares)
        signs = signs or (1,) * len(sq)
        g = tuple(sg * math.sqrt(float(s)) for sg, s in zip(signs, sq))
        return cls(N, g, sq)

    @property
    def J(self) -> int:
        return self.N // 2

    @property
    def is_exact(self) -> bool:
        return all_exact(self.squares)

    def exact_squares(self) -> tuple:
        """Squares as exact rationals (floats converted without rounding)."""
        return tuple(exact(s) for s in self.squares)

    def with_signs(self, signs) -> "CouplingVector":
        return CouplingVector(
            self.N, tuple(s * x for s, x in zip(signs, self.g)), self.squares
        )


def coupling_index(k: int, N: int) -> int:
    """1-based coupling label sitting between rows ``k`` and ``k+1`` (1-based)."""
    return min(k, N - k)


@dataclass(frozen=True)
class ChainMatrix:
    """Three-band view of ``H^(N)`` with a dense view on demand.

    ``products[k]`` is ``upper[k] * lower[k] = -g**2`` kept exact when the
    squares are exact; the determinant recurrence consumes only these.
    """

    N: int
    diag: tuple
    upper: tuple
    lower: tuple
    products: tuple

    @property
    def dense(self) -> np.ndarray:
        H = np.diag(np.asarray(self.diag, dtype=float))
        idx = np.arange(self.N - 1)
        H[idx, idx + 1] = self.upper
        H[idx + 1, idx] = self.lower
        return H

    def __array__(self, dtype=None, copy=None):
        H = self.dense
        return H if dtype is None else H.astype(dtype)


def build_chain(c: CouplingVector) -> ChainMatrix:
    N = check_dimension(c.N)
    diag = tuple(-(N - 1) + 2 * i for i in range(N))
    labels = [coupling_index(k, N) for k in range(1, N)]
    upper = tuple(float(c.g[m - 1]) for m in labels)
    lower = tuple(-u for u in upper)
    products = tuple(-c.squares[m - 1] for m in labels)
    return ChainMatrix(N, diag, upper, lower, products)


def reversal(N: int) -> np.ndarray:
    return np.eye(N)[::-1]


def anti_persymmetry_defect(H) -> float:
    """Max-norm of ``R H R + H`` with ``R`` the index reversal; zero for chains."""
    A = np.asarray(H, dtype=float)
    return float(np.max(np.abs(A[::-1, ::-1] + A)))


# --- two-level reference models -------------------------------------------


class Variant(Enum):
    HERMITIAN = "hermitian"
    PT_SYMMETRIC = "pt"


@dataclass(frozen=True)
class TwoLevelModel:
    a: float
    b: float
    d: float
    variant: Variant = Variant.PT_SYMMETRIC

    def matrix(self) -> np.ndarray:
        lower = self.b if self.variant is Variant.HERMITIAN else -self.b
        return np.array([[self.a, self.b], [lower, self.d]], dtype=float)


def two_level_spectrum(m: TwoLevelModel) -> tuple[complex, complex]:
    """Ascending (by real, then imaginary part) pair of eigenvalues."""
    sign = 1 if m.variant is Variant.HERMITIAN else -1
    root = cmath.sqrt((m.a - m.d) ** 2 + sign * 4 * m.b**2)
    lo, hi = (m.a + m.d - root) / 2, (m.a + m.d + root) / 2
    return tuple(sorted((complex(lo), complex(hi)), key=lambda z: (z.real, z.imag)))


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    @property
    def degenerate(self) -> bool:
        return not self.lo < self.hi

    def __contains__(self, x) -> bool:
        return self.lo < x < self.hi


def two_level_horizon(a: float, d: float) -> Interval:
    """Open interval of ``b`` for which the PT pair ``E'`` is real and distinct.

    The horizon itself is ``(a - d)**2 == 4 b**2``, so the interval is
    ``(-|a-d|/2, |a-d|/2)``; ``a == d`` gives an empty interior.
    """
    half = abs(a - d) / 2
    return Interval(-half, half)
