"""Landmarks and charts of the reality-domain boundary.

* EEP corners, where the whole spectrum collapses to zero energy;
* the strong-coupling chart around a corner;
* the ``(B, q)`` window for ``R`` at J = 3;
* the N = 6 confluence sub-surface and the double-EP curve;
* ray bisection towards the boundary.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from gmpy2 import mpq

from . import _poly
from ._exact import MPQ, all_exact, exact, is_exact
from .chain_model import CouplingVector, check_dimension
from .criteria import DEFAULT_EPSILON, dispatch
from .errors import (
    AnsatzDomainError,
    DepSolveError,
    InconsistencyError,
    NoBoundaryFound,
    ReparametrizationError,
)
from .oracle import SpectrumReport, numeric_spectrum, oracle_verdict
from .secular import SecularForm, secular_form
from .verdict import State

__all__ = [
    "EepPoint",
    "eep_point",
    "eep_squares",
    "literal_maxima",
    "ansatz_gamma",
    "ansatz_to_couplings",
    "R3Window",
    "reparam_J3",
    "window_upper",
    "window_lower",
    "window_series",
    "n6_coefficients",
    "minus_R_factored",
    "confluence_surface_N6",
    "DepPoint",
    "dep_condition",
    "dep_solve_N6",
    "BoundaryPoint",
    "boundary_bisect",
    "root_gap_diagnostic",
]


# --- EEP corners -----------------------------------------------------------------


def eep_squares(N: int) -> tuple[int, ...]:
    """``g_k^2 = (N - k) k`` for k = 1..J."""
    N = check_dimension(N)
    return tuple((N - k) * k for k in range(1, N // 2 + 1))


def literal_maxima(N: int) -> tuple[int, ...]:
    """The unsquared products ``(N - k) k``, kept for comparison only."""
    return eep_squares(N)


@dataclass(frozen=True)
class EepPoint:
    N: int
    g: CouplingVector
    form: SecularForm
    # diagnostics: the same products read as couplings rather than squares
    literal: tuple = ()
    literal_vanishes: bool = False

    @property
    def squares(self) -> tuple:
        return self.g.squares


def eep_point(N: int) -> EepPoint:
    """The corner where every secular coefficient vanishes.

    The vanishing is checked in exact arithmetic; a failure is an internal
    error, not a user error.
    """
    sq = eep_squares(N)
    c = CouplingVector.from_squares(N, sq)
    f = secular_form(c)
    if any(x != 0 for x in f.normalized):
        raise InconsistencyError(f"EEP coefficients do not vanish at N={N}: {f.normalized}")
    lit = literal_maxima(N)
    lit_form = secular_form(CouplingVector(N, lit))
    return EepPoint(N, c, f, lit, all(x == 0 for x in lit_form.normalized))


# --- strong-coupling chart ---------------------------------------------------------


def ansatz_gamma(t, G, J: int):
    """``t + t^2 + ... + t^(J-1) + G t^J``."""
    return sum(t**i for i in range(1, J)) + G * t**J


def ansatz_to_couplings(N: int, t, Gvec) -> CouplingVector:
    """Map ``(t, G_1..G_J)`` to couplings ``g_n = g_n^max sqrt(1 - gamma_n(t))``.

    Exact ``t`` and ``G`` give exact squares.
    """
    N = check_dimension(N)
    J = N // 2
    Gvec = tuple(Gvec)
    if len(Gvec) != J:
        raise ValueError(f"N={N} needs {J} ansatz coefficients, got {len(Gvec)}")
    use_exact = is_exact(t) and all_exact(Gvec)
    if use_exact:
        t = exact(t)
        Gvec = tuple(exact(G) for G in Gvec)
    else:
        t = float(t)
        Gvec = tuple(float(G) for G in Gvec)
    squares = []
    for n, (G, top) in enumerate(zip(Gvec, eep_squares(N)), start=1):
        gamma = ansatz_gamma(t, G, J)
        if not 0 <= gamma <= 1:
            raise AnsatzDomainError(f"gamma_{n}(t) = {float(gamma):.6g} is outside [0, 1]")
        squares.append(top * (1 - gamma))
    return CouplingVector.from_squares(N, squares)


# --- the J = 3 window for R -----------------------------------------------------------


def window_upper(q: float) -> float:
    return 1.0 + (q / 2.0 - 1.0) * math.sqrt(1.0 + q)


def window_lower(q: float) -> float:
    if q <= 3.0:
        return 0.0
    return (q / 2.0 - 1.0) * math.sqrt(1.0 + q) - 1.0


@dataclass(frozen=True)
class R3Window:
    """``R / (2 B^(3/2))`` must lie in ``[lower, upper]``."""

    B: float
    q: float
    lower: float
    upper: float
    value: float

    @property
    def contains(self) -> bool:
        return self.lower <= self.value <= self.upper

    def margin(self) -> float:
        """Signed distance of ``value`` from the nearer window edge (positive inside)."""
        return min(self.value - self.lower, self.upper - self.value)


def reparam_J3(P, Q, R) -> R3Window:
    """Trade ``(P, Q)`` for ``(B, q)`` and bound the rescaled ``R``.

    Equivalent to the J = 3 discriminant test for ``P > 0``, ``Q >= 0``.
    """
    P, Q, R = float(P), float(Q), float(R)
    B = P * P - Q
    if not B > 0.0:
        raise ReparametrizationError(f"B = P^2 - Q = {B:.6g} must be positive")
    if Q < 0.0:
        raise ReparametrizationError(f"Q = {Q:.6g} must be non-negative")
    q = Q / B
    return R3Window(B, q, window_lower(q), window_upper(q), R / (2.0 * B**1.5))


def window_series(order: int = 6) -> list[Fraction]:
    """Exact Taylor coefficients of ``1 + (q/2 - 1) sqrt(1 + q)`` up to ``q^order``."""
    half = Fraction(1, 2)
    binom = [Fraction(1)]
    for n in range(1, order + 1):
        binom.append(binom[-1] * (half - n + 1) / n)
    coeffs = [Fraction(1) - binom[0]]
    coeffs += [half * binom[n - 1] - binom[n] for n in range(1, order + 1)]
    return coeffs


# --- N = 6 ---------------------------------------------------------------------------


def n6_coefficients(c, b, a):
    """Closed-form ``(P, Q, R)`` at N = 6 with ``(g1, g2, g3) = (c, b, a)``."""
    three = mpq(3) if all_exact((c, b, a)) else 3.0
    c2, b2, a2 = c * c, b * b, a * a
    P = -(a2 + 2 * b2 + 2 * c2 - 35) / three
    Q3 = b2 * b2 + 2 * c2 * a2 - 44 * b2 + 28 * c2 - 34 * a2 + c2 * c2 + 259 + 2 * b2 * c2
    minus_R = (
        a2 * c2 * c2 - 10 * b2 * c2 + 30 * c2 * a2 + 225 * a2 - 30 * c2 - c2 * c2 - 25 * b2 * b2 - 225 - 150 * b2
    )
    return P, Q3 / three, -minus_R


def minus_R_factored(c2, b2, a):
    """``-R`` at N = 6 as a difference of squares, in terms of ``c^2, b^2`` and ``a``."""
    return (a * (c2 + 15)) ** 2 - (15 + c2 + 5 * b2) ** 2


def confluence_surface_N6(x, y) -> SecularForm:
    """Secular form with roots ``16 x^2`` (double) and ``25 y^2``.

    The displayed cubic coefficients are built directly and the factorization
    is asserted; exact input is checked exactly, float input to rounding.
    """
    if all_exact((x, y)):
        x, y = exact(x), exact(y)
    else:
        x, y = float(x), float(y)
    x2, y2 = x * x, y * y
    raw = [-6400 * x2 * x2 * y2, 256 * x2 * x2 + 800 * x2 * y2, -(32 * x2 + 25 * y2), 1]
    factored = _poly.mul(_poly.mul([-16 * x2, 1], [-16 * x2, 1]), [-25 * y2, 1])
    if all_exact((x, y)):
        ok = list(raw) == list(factored)
    else:
        scale = max(abs(u) for u in raw)
        ok = all(abs(u - v) <= 1e-12 * scale for u, v in zip(raw, factored))
    if not ok:
        raise InconsistencyError(f"confluence cubic does not factor at x={x}, y={y}")
    return SecularForm.from_raw(raw)


def dep_condition(c2, b2, a):
    """Second DEP relation in terms of ``c^2, b^2`` and ``a``; zero on the double-EP curve."""
    a2 = a * a
    return -66 * a2 - 36 * b2 + 4 * c2 * a2 - 189 + 252 * c2 - 4 * b2 * a2 - a2 * a2


def _validity_ok(c2, a) -> bool:
    return 84 * c2 >= 63 + mpq(12, 5) * (a - 1) * (15 + c2)


@dataclass(frozen=True)
class DepPoint:
    """A point of the N = 6 double-EP curve.

    ``s_double`` is the repeated root of the secular form ``s (s - s_double)^2``
    and ``z = sqrt(s_double) / 4``.  When ``s_double < 0`` the coalescing pairs
    are imaginary: the point is a double EP of the matrix but lies outside
    the reality domain (``on_horizon`` is False) and ``z`` is imaginary.
    """

    c: float
    b: float
    a: float
    z: complex
    s_double: float
    squares: tuple  # exact (c^2, b^2, a^2)
    spectrum: SpectrumReport
    residuals: dict = field(default_factory=dict)

    @property
    def on_horizon(self) -> bool:
        return self.s_double > 0

    @property
    def couplings(self) -> CouplingVector:
        return CouplingVector.from_squares(6, self.squares)

    def energies_expected(self) -> tuple[complex, ...]:
        e = 4 * self.z
        return (-e, -e, 0j, 0j, e, e)


def _mpf_to_mpq(x) -> MPQ:
    man, exp = mpmath.mpf(x).man_exp
    return mpq(int(man)) * mpq(2) ** int(exp) if exp >= 0 else mpq(int(man), 2 ** (-int(exp)))


def _dep_polynomial(c2):
    """Second DEP relation with ``b^2`` eliminated, as a polynomial in ``a`` (lowest first)."""
    k = (c2 + 15) / mpq(5)  # b^2 = k (a - 1)
    # -a^4 - 4k(a-1)a^2 + (4c^2 - 66)a^2 - 36k(a-1) - 189 + 252c^2
    return [36 * k - 189 + 252 * c2, -36 * k, 4 * k + 4 * c2 - 66, -4 * k, mpq(-1)]


def dep_solve_N6(c, a_max: float | None = None, dps: int = 50) -> DepPoint | None:
    """Solve the double-EP system at N = 6 for given ``g1 = c``.

    ``b`` is eliminated by ``b^2 = (c^2 + 15)(a - 1)/5`` and the smallest
    root ``a >= 1`` (``a <= a_max`` when given) of the remaining relation is
    located at ``dps`` digits.  The returned squares are exact rationals with
    ``b^2`` computed from the rational ``a``, so ``R = 0`` holds exactly.
    Returns None if there is no such root or the validity inequality
    ``84 c^2 >= 63 + (12/5)(a - 1)(15 + c^2)`` fails.
    """
    if not c > 0:
        raise ValueError("c must be positive")
    c2 = exact(c) ** 2
    poly = _dep_polynomial(c2)
    hi = math.inf if a_max is None else float(a_max)
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(int(p.numerator)) / int(p.denominator) for p in reversed(poly)]
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=dps)
        except mpmath.libmp.NoConvergence as exc:
            raise DepSolveError(f"DEP polynomial roots did not converge at c={c}", bracket=(1.0, hi)) from exc
        tol = mpmath.mpf(10) ** (-dps // 2)
        cands = sorted(mpmath.re(r) for r in roots if abs(mpmath.im(r)) <= tol and mpmath.re(r) >= 1 - tol)
        cands = [r for r in cands if r <= hi]
        if not cands:
            return None
        a_mp = max(cands[0], mpmath.mpf(1))
        a = _mpf_to_mpq(a_mp)
    residual = abs(float(_poly.evaluate(poly, a))) / float(sum(abs(p) * max(a, 1) ** k for k, p in enumerate(poly)))
    if residual > 1e-12:
        raise DepSolveError(f"DEP residual {residual:.2e} exceeds tolerance at c={c}", bracket=(float(a), hi))
    if not _validity_ok(c2, a):
        return None
    b2 = (c2 + 15) * (a - 1) / 5
    squares = (c2, b2, a * a)
    form = secular_form(CouplingVector.from_squares(6, squares))
    P, Q, R = form.normalized
    if R != 0:
        raise InconsistencyError(f"R = {R} does not vanish on the DEP curve")
    rep = numeric_spectrum(CouplingVector.from_squares(6, squares), method="mpmath", cluster_rtol=1e-8)
    nonzero = sorted((r for r in rep.s_roots if abs(r) > 1e-8 * form.root_scale()), key=lambda r: r.real)
    if len(nonzero) != 2:
        raise InconsistencyError(f"DEP spectrum lacks a double nonzero root: {rep.s_roots}")
    s_double = float(sum(nonzero).real) / 2.0
    z = cmath.sqrt(s_double) / 4.0
    scale = max(abs(float(x)) for x in (a**4, 84 * c2, 36 * b2))
    residuals = {
        "b2_relation": float(b2 - (c2 + 15) * (a - 1) / 5),
        "second_condition": float(dep_condition(c2, b2, a)) / scale,
        "validity_slack": float(84 * c2 - 63 - mpq(12, 5) * (a - 1) * (15 + c2)),
        "minus_R_factored": float(minus_R_factored(c2, b2, a)),
        "3P^2-4Q": float(3 * P * P - 4 * Q) / max(1.0, float(P * P)),
        # coefficient matching of s (s - 16 z^2)^2, and the alternative reading
        "3P-32z^2": float(3 * P) - 2 * s_double,
        "3Q-256z^4": float(3 * Q) - s_double**2,
        "alt:3Q-32z^2": float(3 * Q) - 2 * s_double,
        "alt:R-128z^4": 0.0 - s_double**2 / 2,
    }
    return DepPoint(float(c), math.sqrt(float(b2)), float(a), z, s_double, squares, rep, residuals)


# --- ray bisection ----------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryPoint:
    N: int
    direction: tuple
    r: float
    lo: float
    hi: float
    couplings: CouplingVector
    min_root_gap: float
    min_root: float
    gap_ok: bool


def root_gap_diagnostic(c: CouplingVector) -> tuple[float, float, float]:
    """``(min root gap, min |root|, root scale)`` of the secular polynomial."""
    f = secular_form(c)
    s = np.roots([float(x) for x in reversed(f.raw)]) if f.J > 0 else np.array([])
    gap = min((abs(u - v) for i, u in enumerate(s) for v in s[i + 1 :]), default=math.inf)
    return float(gap), float(min(abs(s))), f.root_scale()


def _ray_point(N, d, r, use_exact):
    if use_exact:
        r = exact(r)
        return CouplingVector.from_squares(N, [r * r * x * x for x in d])
    return CouplingVector(N, tuple(r * x for x in d))


def boundary_bisect(
    N: int,
    direction,
    tol: float = 1e-12,
    method: str = "oracle",
    epsilon: float = DEFAULT_EPSILON,
    gap_tol: float = 1e-4,
    max_iter: int = 200,
) -> BoundaryPoint:
    """Bisect along ``r * direction`` for the first loss of Inside.

    The search runs over ``[0, r_max]`` where ``r_max`` is where the ray
    leaves the box ``g_k^2 <= 1.2 (N - k) k``.  ``method="oracle"`` judges
    each probe exactly (floats are binary rationals); ``"criteria"`` uses the
    closed-form tests, with the boundary band counted as not Inside.
    """
    N = check_dimension(N)
    d = np.asarray([float(x) for x in direction])
    if d.shape != (N // 2,):
        raise ValueError(f"direction must have {N // 2} components")
    norm = float(np.linalg.norm(d))
    if norm == 0.0 or not math.isfinite(norm):
        raise ValueError("direction must be a finite nonzero vector")
    d = tuple(float(x) / norm for x in d)
    if method == "oracle":
        judge = oracle_verdict
        use_exact = True
    elif method == "criteria":
        judge = lambda c: dispatch(c, epsilon)  # noqa: E731
        use_exact = False
    else:
        raise ValueError(f"unknown bisection method {method!r}")

    def inside(r):
        return judge(_ray_point(N, d, r, use_exact)).state is State.INSIDE

    r_max = min(math.sqrt(1.2 * sq) / abs(x) for sq, x in zip(eep_squares(N), d) if x != 0.0)
    if not inside(0.0):
        raise NoBoundaryFound("the origin is not Inside", direction=d, r_max=r_max)
    if inside(r_max):
        raise NoBoundaryFound(f"no transition within r <= {r_max:.6g}", direction=d, r_max=r_max)
    lo, hi = 0.0, r_max
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if inside(mid):
            lo = mid
        else:
            hi = mid
    r = 0.5 * (lo + hi)
    c = _ray_point(N, d, r, use_exact)
    gap, smallest, scale = root_gap_diagnostic(c)
    ok = min(gap, smallest) <= gap_tol * scale
    return BoundaryPoint(N, d, r, lo, hi, c, gap, smallest, ok)
