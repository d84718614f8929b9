"""Closed-form membership tests for the reality domains, J = 1..5.

Every test is an inequality chain on the normalized secular coefficients.
Each inequality is turned into a scale-free *margin*: its value divided by
``sigma**k``, where ``sigma`` is the root scale of the form and ``k`` the
degree of the inequality in ``s``.  A margin within ``epsilon`` of zero puts
the point in the boundary band; strict verdicts are only issued outside it.

For J >= 3 the tests reuse the structure of the lower orders: the derivative
of the degree-J secular polynomial, divided by J, is the degree-(J-1) form
with the same leading coefficients, so the reality of its extrema is itself a
lower-order membership question.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from gmpy2 import mpq

from .chain_model import CouplingVector
from .errors import InconsistencyError
from .oracle import classify_form, exact_vector
from .roots import solve_cubic_real, solve_quartic_real
from .secular import NAMES, SecularForm, secular_form
from .verdict import State, Verdict

DEFAULT_EPSILON = 1e-9

__all__ = [
    "AuxInvariants",
    "AuxRoots",
    "DEFAULT_EPSILON",
    "aux_invariants",
    "dispatch",
    "inside_J1",
    "inside_J2",
    "inside_J3",
    "inside_J4",
    "inside_J5",
    "interlacing_chain",
    "solve_cubic_real",
    "solve_quartic_real",
    "compact_form",
    "discriminant_form",
]

COMPACT_J3 = "3P^2Q^2 + 6RPQ >= 4Q^3 + R^2 + 4RP^3"
TWO_SIDED_J3 = "2B s- <= PQ - R <= 2B s+"
SIDE_J4 = "derivative-cubic reality: |C - sqrt(1 + Q/B)| <= 1"


@dataclass(frozen=True)
class AuxInvariants:
    """``B = P^2 - Q``, ``q = Q/B`` and the rescaled ``C, D, G``.

    ``2 B^(3/2) C = PQ - R``, ``3 B^2 D = PR - S``, ``4 B^(5/2) G = PS - T``.
    Entries the order J does not provide, or that need ``B > 0``, are None.
    """

    B: float | None = None
    q: float | None = None
    C: float | None = None
    D: float | None = None
    G: float | None = None


@dataclass(frozen=True)
class AuxRoots:
    x: tuple = ()
    Y: tuple = ()
    Yplusminus: tuple = ()
    Ygreek: tuple = ()


def aux_invariants(f: SecularForm) -> AuxInvariants:
    X = [float(v) for v in f.normalized] + [None] * (5 - f.J)
    P, Q, R, S, T = X
    if Q is None:
        return AuxInvariants()
    B = P * P - Q
    if B <= 0.0:
        return AuxInvariants(B=B)
    rb = math.sqrt(B)
    return AuxInvariants(
        B=B,
        q=Q / B,
        C=None if R is None else (P * Q - R) / (2.0 * B * rb),
        D=None if S is None else (P * R - S) / (3.0 * B * B),
        G=None if T is None else (P * S - T) / (4.0 * B * B * rb),
    )


def compact_form(P, Q, R):
    """``3P^2Q^2 + 6RPQ - 4Q^3 - R^2 - 4RP^3`` (one 27th of the cubic discriminant)."""
    return 3 * P * P * Q * Q + 6 * R * P * Q - 4 * Q**3 - R * R - 4 * R * P**3


def discriminant_form(P, Q, R):
    """``4(P^2 - Q)^3 - (R - 3PQ + 2P^3)^2``; equal to :func:`compact_form` identically."""
    return 4 * (P * P - Q) ** 3 - (R - 3 * P * Q + 2 * P**3) ** 2


# --- margin bookkeeping --------------------------------------------------------


class _Decided(Exception):
    def __init__(self, verdict):
        self.verdict = verdict


class _Judge:
    """Collects ``(name, margin)`` checks; aborts on the first decisive failure."""

    def __init__(self, epsilon):
        self.epsilon = epsilon
        self.checks = []
        self.marginal = None
        self.notes = []

    def check(self, name, margin):
        margin = float(margin)
        self.checks.append((name, margin))
        if margin < -self.epsilon:
            raise _Decided(self.verdict(State.OUTSIDE, name, margin))
        if margin <= self.epsilon and self.marginal is None:
            self.marginal = (name, margin)

    def verdict(self, state, witness="", margin=None):
        return Verdict(state, witness, margin, tuple(self.checks), notes=tuple(self.notes))

    def undecidable(self, name, margin=0.0):
        """Stop because later steps are undefined; only legal after a marginal check."""
        if self.marginal is None:
            raise InconsistencyError(f"{name} failed although every earlier margin is decisive")
        raise _Decided(self.verdict(State.BOUNDARY, *self.marginal))

    def finish(self):
        if self.marginal is not None:
            return self.verdict(State.BOUNDARY, *self.marginal)
        return self.verdict(State.INSIDE, "", min(m for _, m in self.checks))


def _run(body, f, epsilon):
    judge = _Judge(epsilon)
    try:
        body(judge, f)
    except _Decided as done:
        return done.verdict
    return judge.finish()


def _necessary(judge, f, sigma):
    for k, (name, x) in enumerate(zip(NAMES, f.normalized), start=1):
        judge.check(f"{name} >= 0", float(x) / sigma**k)


def _delegate(judge, f, B_margin):
    """``B ~ 0``: the rescaled invariants blow up, so ask the exact oracle."""
    judge.checks.append(("B > 0", B_margin))
    exact_verdict = classify_form(f)
    judge.notes.append("B within band: verdict delegated to the Sturm oracle")
    witness = exact_verdict.witness or "B > 0"
    raise _Decided(
        Verdict(exact_verdict.state, f"B~0 (oracle: {witness})", B_margin, tuple(judge.checks), notes=tuple(judge.notes))
    )


# --- J = 1, 2, 3 -----------------------------------------------------------------


def inside_J1(f: SecularForm, epsilon: float = DEFAULT_EPSILON) -> Verdict:
    """The single root is ``s = P``."""
    _require(f, 1)
    return _run(lambda judge, f: _necessary(judge, f, f.root_scale()), f, epsilon)


def inside_J2(f: SecularForm, epsilon: float = DEFAULT_EPSILON) -> Verdict:
    """``P >= 0`` and ``P^2 >= Q >= 0``, all strict for the interior."""
    _require(f, 2)

    def body(judge, f):
        sigma = f.root_scale()
        _necessary(judge, f, sigma)
        P, Q = f.normalized
        judge.check("P^2 >= Q", float(P * P - Q) / sigma**2)

    return _run(body, f, epsilon)


def inside_J3(f: SecularForm, epsilon: float = DEFAULT_EPSILON) -> Verdict:
    """Positivity of ``P, Q, R`` plus the compact discriminant inequality.

    The two-sided form ``2B s- <= PQ - R <= 2B s+`` with ``s+- = P +- sqrt(B)``
    is evaluated alongside and must agree in sign wherever both margins are
    outside the band.
    """
    _require(f, 3)

    def body(judge, f):
        sigma = f.root_scale()
        P, Q, R = f.normalized
        compact = float(compact_form(P, Q, R)) / sigma**6
        Pf, Qf, Rf = (float(v) for v in f.normalized)
        B = Pf * Pf - Qf
        if B > 0.0:
            rb = math.sqrt(B)
            lhs = Pf * Qf - Rf
            two_sided = min(lhs - 2.0 * B * (Pf - rb), 2.0 * B * (Pf + rb) - lhs) / sigma**3
        else:
            two_sided = B / sigma**2
        eps = judge.epsilon
        if abs(compact) > eps and abs(two_sided) > eps and (compact > 0) != (two_sided > 0):
            raise InconsistencyError(
                f"J=3 criteria disagree: compact margin {compact:.3e}, two-sided margin {two_sided:.3e}"
            )
        _necessary(judge, f, sigma)
        judge.check(COMPACT_J3, compact)
        judge.checks.append((TWO_SIDED_J3, two_sided))

    return _run(body, f, epsilon)


# --- J = 4 ----------------------------------------------------------------------
#
# The interlacing links are decided through the sign of the secular polynomial
# at its own critical points x_k, which is what the Y-chain encodes: at
# ``Y_k = x_k / sqrt(B)`` the auxiliary polynomial is a negative multiple of the
# secular polynomial.  A critical value is insensitive to first-order errors
# in x_k, while the Y-gaps lose about half the digits when roots cluster.
# The remaining inequalities are written as polynomials in P..T so that exact
# input is judged without rounding.


def _binomial_coeffs(f: SecularForm):
    """Coefficients of ``sum_k (-1)^k C(J,k) X_k x^(J-k)``, lowest degree first."""
    J = f.J
    c = [(-1) ** k * math.comb(J, k) * x for k, x in enumerate(f.normalized, start=1)]
    return [*reversed(c), 1]


def _critical_value(coeffs, x, exact):
    if exact:
        x = mpq(x)
    acc = 0
    for a in reversed(coeffs):
        acc = acc * x + a
    return float(acc)


def _gaps(values):
    return [hi - lo for lo, hi in zip(values, values[1:])]


def _y_chain_J4(f, x):
    aux = aux_invariants(f)
    rb = math.sqrt(aux.B)
    w = math.sqrt(max(aux.C * aux.C - aux.D, 0.0))
    return AuxRoots(tuple(x), tuple(v / rb for v in x), (aux.C - w, aux.C + w))


def _y_chain_J5(f, x):
    aux = aux_invariants(f)
    rb = math.sqrt(aux.B)
    Yw = solve_cubic_real(-3.0 * aux.C, 3.0 * aux.D, -aux.G)
    return AuxRoots(tuple(x), tuple(v / rb for v in x), (), tuple(Yw))


def interlacing_chain(f: SecularForm) -> tuple[AuxRoots, tuple[float, ...]]:
    """The rescaled extrema and auxiliary roots for J = 4, 5, plus the chain gaps.

    Diagnostic only: the verdicts use the equivalent critical-value signs.
    Returns empty gaps when ``B <= 0`` or the extrema are not all real.
    """
    if f.J not in (4, 5):
        raise ValueError("the interlacing chain exists for J = 4 and J = 5")
    P, Q, R, S = (float(v) for v in f.normalized[:4])
    if P * P - Q <= 0.0:
        return AuxRoots(), ()
    if f.J == 4:
        x = solve_cubic_real(-3.0 * P, 3.0 * Q, -R)
        if len(x) < 3:
            return AuxRoots(tuple(x)), ()
        roots = _y_chain_J4(f, x)
        chain = [roots.Y[0], roots.Yplusminus[0], roots.Y[1], roots.Yplusminus[1], roots.Y[2]]
    else:
        x = _quartic_extrema(f)
        if len(x) < 4:
            return AuxRoots(tuple(x)), ()
        roots = _y_chain_J5(f, x)
        if len(roots.Ygreek) < 3:
            return roots, ()
        Y, Yw = roots.Y, roots.Ygreek
        chain = [Y[0], Yw[0], Y[1], Yw[1], Y[2], Yw[2], Y[3]]
    return roots, tuple(_gaps(chain))


J4_LINKS = ("Y1 <= Y-", "Y- <= Y2 <= Y+", "Y+ <= Y3")
J5_LINKS = ("Y1 <= Ya", "Ya <= Y2 <= Yb", "Yb <= Y3 <= Yg", "Yg <= Y4")


def _interlacing(judge, f, x, sigma, names):
    """Alternating signs of the secular polynomial at its critical points.

    The sign at the largest critical point is negative (a minimum of a monic
    polynomial whose roots all exceed it), and alternates downwards.
    """
    coeffs = _binomial_coeffs(f)
    scale = sigma ** f.J
    n = len(x)
    for k, (name, xk) in enumerate(zip(names, x)):
        sign = -1.0 if (n - 1 - k) % 2 == 0 else 1.0
        judge.check(name, sign * _critical_value(coeffs, xk, f.exact) / scale)


def inside_J4(f: SecularForm, epsilon: float = DEFAULT_EPSILON, roots_out: dict | None = None) -> Verdict:
    """Interlacing ``Y1 <= Y- <= Y2 <= Y+ <= Y3`` of the rescaled extrema.

    ``x1 <= x2 <= x3`` are the roots of ``x^3 - 3Px^2 + 3Qx - R`` (the
    derivative of the quartic over 4), ``Y_k = x_k / sqrt(B)`` and
    ``Y+- = C +- sqrt(C^2 - D)`` are the roots of the quadratic whose sign
    at ``Y_k`` equals minus the sign of the quartic at ``x_k``.
    """
    _require(f, 4)

    def body(judge, f):
        sigma = f.root_scale()
        _necessary(judge, f, sigma)
        P, Q, R, S = f.normalized
        B = P * P - Q
        if abs(float(B)) / sigma**2 <= judge.epsilon:
            _delegate(judge, f, float(B) / sigma**2)
        judge.check("B > 0", float(B) / sigma**2)
        # |C - sqrt(1 + q)| <= 1  <=>  4B^3 >= (R - 3PQ + 2P^3)^2
        judge.check(SIDE_J4, float(discriminant_form(P, Q, R)) / sigma**6)
        x = solve_cubic_real(-3.0 * float(P), 3.0 * float(Q), -float(R))
        if len(x) < 3:
            judge.undecidable("derivative-cubic reality")
        judge.check("derivative roots non-negative", x[0] / sigma)
        # 3B^2 D = PR - S ;  12 B^3 (C^2 - D) = 3(PQ - R)^2 - 4B(PR - S)
        judge.check("D >= 0", float(P * R - S) / sigma**4)
        judge.check("C^2 >= D", float(3 * (P * Q - R) ** 2 - 4 * B * (P * R - S)) / sigma**6)
        _interlacing(judge, f, x, sigma, J4_LINKS)
        if roots_out is not None:
            roots_out["roots"] = _y_chain_J4(f, x)

    verdict = _run(body, f, epsilon)
    if verdict.witness == SIDE_J4:
        verdict = replace(verdict, notes=verdict.notes + ("side condition is the binding one",))
    return verdict


# --- J = 5 ----------------------------------------------------------------------


def _cubic_discriminant(a, b, c):
    """Discriminant of ``Y^3 + a Y^2 + b Y + c``."""
    return 18 * a * b * c - 4 * a**3 * c + a * a * b * b - 4 * b**3 - 27 * c * c


def _quartic_extrema(f):
    """Real roots of the derivative quartic, with a companion-matrix fallback."""
    P, Q, R, S = (float(v) for v in f.normalized[:4])
    x = solve_quartic_real(-4.0 * P, 6.0 * Q, -4.0 * R, S)
    if len(x) == 4:
        return x
    z = np.roots([1.0, -4.0 * P, 6.0 * Q, -4.0 * R, S])
    tol = 1e-7 * f.root_scale()
    if np.all(np.abs(z.imag) <= tol):
        return sorted(float(v) for v in z.real)
    return x


def inside_J5(f: SecularForm, epsilon: float = DEFAULT_EPSILON, roots_out: dict | None = None) -> Verdict:
    """Interlacing ``Y1 <= Ya <= Y2 <= Yb <= Y3 <= Yg <= Y4``.

    ``x1..x4`` are the roots of ``x^4 - 4Px^3 + 6Qx^2 - 4Rx + S``, whose
    reality and positivity is first certified by :func:`inside_J4` applied
    to ``(P, Q, R, S)``; ``Ya <= Yb <= Yg`` are the roots of
    ``w(Y) = Y^3 - 3CY^2 + 3DY - G``.
    """
    _require(f, 5)

    def body(judge, f):
        sigma = f.root_scale()
        _necessary(judge, f, sigma)
        lower = inside_J4(f.truncated(4), judge.epsilon)
        if lower.state is State.INSIDE:
            judge.check("derivative quartic inside", lower.margin)
        else:
            name = f"derivative: {lower.witness}"
            judge.checks.append((name, lower.margin))
            if lower.state is State.OUTSIDE:
                raise _Decided(judge.verdict(State.OUTSIDE, name, lower.margin))
            if judge.marginal is None:
                judge.marginal = (name, lower.margin)
        P, Q, R, S, T = f.normalized
        B = P * P - Q
        if abs(float(B)) / sigma**2 <= judge.epsilon:
            _delegate(judge, f, float(B) / sigma**2)
        judge.check("B > 0", float(B) / sigma**2)
        x = _quartic_extrema(f)
        if len(x) < 4:
            judge.undecidable("derivative-quartic reality")
        judge.check("derivative roots non-negative", x[0] / sigma)
        # w with its roots scaled by 2 B^(3/2) has rational coefficients;
        # its discriminant is 64 B^9 disc(w).
        a, b, c = -3 * (P * Q - R), 4 * B * (P * R - S), -2 * B * B * (P * S - T)
        judge.check("w-cubic reality", float(_cubic_discriminant(a, b, c)) / (64 * float(B) ** 6 * sigma**6))
        _interlacing(judge, f, x, sigma, J5_LINKS)
        if roots_out is not None:
            roots_out["roots"] = _y_chain_J5(f, x)

    return _run(body, f, epsilon)


# --- routing --------------------------------------------------------------------

_BY_ORDER = {1: inside_J1, 2: inside_J2, 3: inside_J3, 4: inside_J4, 5: inside_J5}


def _require(f, J):
    if f.J != J:
        raise ValueError(f"criterion for J={J} applied to a form with J={f.J}")


def classify(f: SecularForm, epsilon: float = DEFAULT_EPSILON) -> Verdict:
    verdict = _BY_ORDER[f.J](f, epsilon)
    return replace(verdict, aux=aux_invariants(f))


def dispatch(c: CouplingVector, epsilon: float = DEFAULT_EPSILON) -> Verdict:
    """Build the chain, reduce it to its secular form and apply the J-th criterion.

    The secular coefficients are always formed in rational arithmetic (a float
    coupling square is a binary rational): near the EEP corners the float
    recurrence would cancel most of their digits.
    """
    return classify(secular_form(exact_vector(c)), epsilon)
