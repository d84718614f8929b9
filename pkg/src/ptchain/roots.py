"""Closed-form real roots of monic cubics and quartics.

Roots are returned ascending, with multiplicity, after polishing on the
original polynomial.  The three-real-root cubic uses
the trigonometric form so no complex intermediates appear.
"""
from __future__ import annotations

import math

_TWO_PI_3 = 2.0 * math.pi / 3.0
_EPS = 2.0**-52


def _polish(coeffs, x, steps=3):
    """Newton on the monic polynomial ``coeffs`` (highest degree first, leading 1 implied)."""
    for _ in range(steps):
        f, df = _value_and_slope(coeffs, x)
        if df == 0.0 or f == 0.0:
            break
        x_new = x - f / df
        if abs(_value(coeffs, x_new)) >= abs(f):
            break
        x = x_new
    return x


def _value_and_slope(coeffs, x):
    f, df = 1.0, 0.0
    for a in coeffs:
        df = df * x + f
        f = f * x + a
    return f, df


def _refine(coeffs, xs, max_iter=40):
    """Polish approximate roots.

    When every root is present, an Aberth-Ehrlich sweep moves them together;
    the repulsion term stops two estimates from collapsing onto one root of
    a close pair.  Otherwise each root gets a few guarded Newton steps.
    """
    if len(xs) != len(coeffs):
        return sorted(x for x in (_polish(coeffs, x, steps=60) for x in xs) if _is_root(coeffs, x))
    xs = list(xs)
    scale = max([1.0] + [abs(x) for x in xs])
    for _ in range(max_iter):
        biggest = 0.0
        for i, x in enumerate(xs):
            f, df = _value_and_slope(coeffs, x)
            if f == 0.0:
                continue
            repel = sum(1.0 / (x - y) for j, y in enumerate(xs) if j != i and x != y)
            denom = df - f * repel
            if denom == 0.0 or not math.isfinite(denom):
                continue
            step = f / denom
            if abs(_value(coeffs, x - step)) > abs(f):
                continue  # rounding noise near a multiple root
            xs[i] = x - step
            biggest = max(biggest, abs(step))
        if biggest <= 4e-16 * scale:
            break
    return sorted(xs)


def _is_root(coeffs, x):
    """Reject local minima of |f| that an ill-conditioned closed form mistook for roots."""
    size = abs(x) ** len(coeffs)
    for k, a in enumerate(coeffs, start=1):
        size += abs(a) * abs(x) ** (len(coeffs) - k)
    return abs(_value(coeffs, x)) <= 1e5 * _EPS * size


def _value(coeffs, x):
    f = 1.0
    for a in coeffs:
        f = f * x + a
    return f


def _cbrt(x):
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def solve_cubic_real(p2: float, p1: float, p0: float) -> list[float]:
    """Real roots of ``x**3 + p2 x**2 + p1 x + p0``."""
    shift = p2 / 3.0
    # depressed: t**3 + p t + q with x = t - shift
    p = p1 - p2 * shift
    q = 2.0 * shift**3 - p1 * shift + p0
    scale = max(abs(p2), abs(p1) ** 0.5, abs(p0) ** (1.0 / 3.0), 1e-300)
    tiny = 1e-14
    if abs(p) <= tiny * scale**2 and abs(q) <= tiny * scale**3:
        ts = [0.0, 0.0, 0.0]
    else:
        disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
        # a double root leaves rounding residue of either sign in disc;
        # bound it by propagating the rounding of the shift through p and q
        dq = 8 * _EPS * (2 * abs(shift) ** 3 + abs(p1 * shift) + abs(p0))
        dp = 8 * _EPS * (abs(p1) + abs(p2 * shift))
        if abs(disc) <= 4 * (abs(q) * dq / 2 + (p / 3.0) ** 2 * dp):
            disc = 0.0
        if disc > 0.0:
            root = math.sqrt(disc)
            u = _cbrt(-q / 2.0 + root)
            v = _cbrt(-q / 2.0 - root)
            ts = [u + v]
        elif disc == 0.0 or p == 0.0:
            u = _cbrt(-q / 2.0)
            ts = [2.0 * u, -u, -u]
        else:
            m = 2.0 * math.sqrt(-p / 3.0)
            arg = 3.0 * q / (p * m)
            theta = math.acos(max(-1.0, min(1.0, arg))) / 3.0
            ts = [m * math.cos(theta - k * _TWO_PI_3) for k in range(3)]
    return _refine((p2, p1, p0), [t - shift for t in ts])


def _quadratic_real(b: float, c: float) -> list[float]:
    """Real roots of ``y**2 + b y + c`` (near-zero discriminant clamped)."""
    disc = b * b - 4.0 * c
    if disc < 0.0:
        if disc >= -1e-12 * max(b * b, abs(4.0 * c), 1e-300):
            disc = 0.0
        else:
            return []
    r = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(r, b))  # no cancellation
    if q == 0.0:
        return [0.0, 0.0]
    return [q, c / q]


def solve_quartic_real(p3: float, p2: float, p1: float, p0: float) -> list[float]:
    """Real roots of ``x**4 + p3 x**3 + p2 x**2 + p1 x + p0`` via the resolvent cubic."""
    shift = p3 / 4.0
    # depressed: y**4 + a y**2 + b y + c with x = y - shift
    a = p2 - 6.0 * shift**2
    b = p1 - 2.0 * p2 * shift + 8.0 * shift**3
    c = p0 - p1 * shift + p2 * shift**2 - 3.0 * shift**4
    scale = max(abs(p3), abs(p2) ** 0.5, abs(p1) ** (1.0 / 3.0), abs(p0) ** 0.25, 1e-300)
    ys: list[float] = []
    if abs(b) <= 1e-14 * scale**3:
        for z in _quadratic_real(a, c):
            if z > 0.0:
                r = math.sqrt(z)
                ys += [-r, r]
            elif z >= -1e-14 * scale**2:
                ys += [0.0, 0.0]
    else:
        # (y**2 + m)**2 = (2m - a) y**2 - b y + (m**2 - c); pick m with 2m > a
        ms = solve_cubic_real(-a / 2.0, -c, a * c / 2.0 - b * b / 8.0)
        m = ms[-1]
        w2 = 2.0 * m - a
        if w2 <= 0.0:
            w2 = 0.0
        w = math.sqrt(w2)
        if w == 0.0:
            ys = []
        else:
            ys = _quadratic_real(-w, m + b / (2.0 * w)) + _quadratic_real(w, m - b / (2.0 * w))
    return _refine((p3, p2, p1, p0), [y - shift for y in ys])
