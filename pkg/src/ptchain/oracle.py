"""Ground truth for domain membership, independent of the closed-form criteria.

``sturm_classify`` decides exactly, over the rationals, whether every root of
the secular polynomial in ``s`` is real and non-negative, and whether any is
repeated or zero.  ``numeric_spectrum`` is the floating-point companion used
for reports and cross-checks.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import mpmath
import numpy as np

from . import _poly
from ._exact import exact
from .chain_model import CouplingVector
from .errors import RootFindingError
from .secular import SecularForm, secular_form
from .verdict import State, Verdict


@dataclass(frozen=True)
class SturmCertificate:
    squarefree_part: tuple
    sign_variation_counts: tuple  # (at 0+, at +inf) of the Sturm chain
    n_nonneg_real_roots: int  # distinct roots in [0, inf)
    has_multiple_root: bool
    has_root_at_zero: bool
    multiplicities: tuple  # ((multiplicity, distinct non-negative roots with it), ...)

    @property
    def n_nonneg_with_multiplicity(self) -> int:
        return sum(m * n for m, n in self.multiplicities)


def sturm_chain(p) -> list:
    chain = [_poly.trim(p), _poly.derivative(_poly.trim(p))]
    while chain[-1]:
        rem = _poly.divmod_poly(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append([-a for a in rem])
    return [q for q in chain if q]


def _positive_root_count(p):
    """Distinct roots in ``(0, inf)`` of a square-free ``p`` with ``p(0) != 0``."""
    chain = sturm_chain(p)
    at_zero = _poly.sign_variations([q[0] for q in chain])
    at_inf = _poly.sign_variations([q[-1] for q in chain])
    return at_zero - at_inf, (at_zero, at_inf)


def _nonneg_root_count(p):
    if p[0] == 0:
        count, variations = _positive_root_count(p[1:])
        return count + 1, variations
    return _positive_root_count(p)


def _yun(p):
    """Square-free decomposition ``p = prod_i a_i**i`` (Yun)."""
    dp = _poly.derivative(p)
    a0 = _poly.gcd(p, dp)
    b = _poly.divmod_poly(p, a0)[0]
    c = _poly.divmod_poly(dp, a0)[0]
    d = _poly.add(c, [-x for x in _poly.derivative(b)])
    factors, i = [], 1
    while _poly.degree(b) > 0:
        a = _poly.gcd(b, d)
        b = _poly.divmod_poly(b, a)[0]
        c = _poly.divmod_poly(d, a)[0]
        d = _poly.add(c, [-x for x in _poly.derivative(b)])
        if _poly.degree(a) > 0:
            factors.append((i, a))
        i += 1
    return factors


def sturm_classify(f) -> SturmCertificate:
    """Exact root census of a secular form (or raw coefficient list) on ``[0, inf)``."""
    raw = f.raw if isinstance(f, SecularForm) else f
    p = _poly.trim([exact(a) for a in raw])
    if not p:
        raise ValueError("zero polynomial: malformed secular form")
    if len(p) == 1:
        return SturmCertificate(tuple(p), (0, 0), 0, False, False, ())
    chain = sturm_chain(p)
    g = chain[-1]
    root_at_zero = p[0] == 0
    if len(g) == 1:
        sqf = p
        if root_at_zero:
            n, variations = _nonneg_root_count(sqf)
        else:
            at_zero = _poly.sign_variations([q[0] for q in chain])
            at_inf = _poly.sign_variations([q[-1] for q in chain])
            n, variations = at_zero - at_inf, (at_zero, at_inf)
        return SturmCertificate(tuple(sqf), variations, n, False, root_at_zero, ((1, n),))
    sqf = _poly.monic(_poly.divmod_poly(p, g)[0])
    n, variations = _nonneg_root_count(sqf)
    mults = tuple((i, _nonneg_root_count(a)[0]) for i, a in _yun(p))
    return SturmCertificate(tuple(sqf), variations, n, True, root_at_zero, mults)


def classify_form(f: SecularForm) -> Verdict:
    """Exact verdict for a secular form; floats are taken at their binary value."""
    cert = sturm_classify(f)
    J = len(f.raw) - 1 if isinstance(f, SecularForm) else len(_poly.trim(f)) - 1
    if not cert.has_multiple_root and not cert.has_root_at_zero and cert.n_nonneg_real_roots == J:
        return Verdict(State.INSIDE, "", math.inf)
    if cert.n_nonneg_with_multiplicity == J:
        witness = "multiple root" if cert.has_multiple_root else "root at s=0"
        if cert.has_multiple_root and cert.has_root_at_zero:
            witness = "multiple root and root at s=0"
        return Verdict(State.BOUNDARY, witness, 0.0)
    return Verdict(State.OUTSIDE, "complex or negative root in s", -math.inf)


def exact_vector(c: CouplingVector) -> CouplingVector:
    return c if c.is_exact else CouplingVector(c.N, c.g, c.exact_squares())


def oracle_verdict(c: CouplingVector) -> Verdict:
    return classify_form(secular_form(exact_vector(c)))


# --- numeric spectrum --------------------------------------------------------


class SpectrumClass(Enum):
    ALL_REAL_SIMPLE = "AllRealSimple"
    DEGENERATE_REAL = "DegenerateReal"
    COMPLEX_PAIRS = "ComplexPairs"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SpectrumReport:
    s_roots: tuple
    energies: tuple
    classification: SpectrumClass
    degeneracy_pattern: tuple
    clusters: tuple  # ((mean s, multiplicity), ...)
    residual: float

    @property
    def min_root_gap(self) -> float:
        s = self.s_roots
        if len(s) < 2:
            return math.inf
        return min(abs(a - b) for i, a in enumerate(s) for b in s[i + 1 :])

    @property
    def min_root(self) -> float:
        return min(abs(x) for x in self.s_roots)


def _sort_complex(values):
    return tuple(sorted(values, key=lambda z: (round(z.real, 12), z.imag)))


def _roots_numpy(raw):
    coeffs = [float(a) for a in reversed(raw)]
    return [complex(r) for r in np.roots(coeffs)]


def _roots_mpmath(raw, dps=50):
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(int(exact(a).numerator)) / int(exact(a).denominator) for a in reversed(raw)]
        try:
            rts = mpmath.polyroots(coeffs, maxsteps=400, extraprec=2 * dps)
        except mpmath.libmp.NoConvergence as exc:
            raise RootFindingError(f"polyroots did not converge: {exc}", poly=tuple(raw)) from exc
        return [complex(r) for r in rts]


def spectrum_of_form(
    f: SecularForm,
    odd: bool = False,
    method: str = "numpy",
    cluster_rtol: float = 1e-6,
    real_rtol: float = 1e-9,
) -> SpectrumReport:
    """Roots in ``s``, energies ``+-sqrt(s)`` (plus ``0`` when ``odd``) and their census.

    Roots closer than ``cluster_rtol * scale`` are treated as one degenerate
    level when classifying; the reported roots and energies stay raw.
    """
    raw = f.raw
    if method == "numpy":
        s = _roots_numpy(raw)
    elif method == "mpmath":
        s = _roots_mpmath(raw)
    else:
        raise ValueError(f"unknown root finder {method!r}")
    fl = [float(a) for a in raw]
    residual = 0.0
    coeff_scale = max(abs(a) for a in fl)
    for r in s:
        res = abs(_poly.evaluate(fl, r)) / (coeff_scale * max(1.0, abs(r)) ** (len(fl) - 1))
        if res > 1e-9:
            raise RootFindingError(f"root {r} has relative residual {res:.2e}", poly=tuple(raw))
        residual = max(residual, res)
    s = list(_sort_complex(s))

    sigma = f.root_scale()
    groups: list[list[complex]] = []
    for r in s:
        for grp in groups:
            if abs(r - sum(grp) / len(grp)) <= cluster_rtol * sigma:
                grp.append(r)
                break
        else:
            groups.append([r])
    clusters = tuple((sum(g) / len(g), len(g)) for g in groups)

    tol = real_rtol * sigma
    pattern = []
    zero_level = 1 if odd else 0
    degenerate = broken = False
    for mean, k in clusters:
        if abs(mean.imag) > tol or mean.real < -tol:
            broken = True
        if abs(mean) <= tol:
            zero_level += 2 * k
        else:
            pattern += [k, k]
            degenerate |= k > 1
    if zero_level:
        pattern.append(zero_level)
        degenerate |= zero_level > 1
    if broken:
        cls = SpectrumClass.COMPLEX_PAIRS
    elif degenerate:
        cls = SpectrumClass.DEGENERATE_REAL
    else:
        cls = SpectrumClass.ALL_REAL_SIMPLE

    energies = [0j] if odd else []
    for r in s:
        e = cmath.sqrt(r)
        energies += [e, -e]
    return SpectrumReport(
        s_roots=tuple(s),
        energies=_sort_complex(energies),
        classification=cls,
        degeneracy_pattern=tuple(sorted(pattern)),
        clusters=clusters,
        residual=residual,
    )


def numeric_spectrum(c: CouplingVector, method: str = "numpy", **kwargs) -> SpectrumReport:
    """Spectrum report of ``H^(N)``; ``method="mpmath"`` runs at 50 digits on exact data."""
    f = secular_form(exact_vector(c) if method == "mpmath" else c)
    return spectrum_of_form(f, odd=bool(c.N % 2), method=method, **kwargs)
