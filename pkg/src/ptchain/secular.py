"""Characteristic polynomial of the chain and its reduction to ``s = E**2``.

The chain spectrum is symmetric under ``E -> -E``; for odd ``N`` it also
contains the persistent level ``E = 0``.  Dropping that level and
substituting ``s = E**2`` leaves a monic degree-``J`` polynomial which is
written as

    s^J - C(J,1) P s^(J-1) + C(J,2) Q s^(J-2) - C(J,3) R s^(J-3) + ...

with binomial weights, so that ``P, Q, R, S, T`` are the averaged elementary
symmetric functions of the roots.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple

from . import _poly
from ._exact import all_exact, exact
from .chain_model import ChainMatrix, CouplingVector, build_chain
from .errors import InconsistencyError

NAMES = ("P", "Q", "R", "S", "T")
FLOAT_PARITY_RTOL = 1e-9


@dataclass(frozen=True)
class CharPoly:
    """``det(H - E I)`` as coefficients in ``E``, lowest degree first."""

    N: int
    coeffs: tuple
    # float path only: the same recurrence run on absolute values, a
    # per-coefficient size against which rounding residue is judged
    magnitude: tuple | None = None

    @property
    def exact(self) -> bool:
        return all_exact(self.coeffs)

    def __call__(self, E):
        return _poly.evaluate(self.coeffs, E)


def char_poly(H: ChainMatrix) -> CharPoly:
    """Three-term recurrence ``D_k = (d_k - E) D_{k-1} - (u_{k-1} l_{k-1}) D_{k-2}``."""
    exact_path = all_exact(H.products)
    if exact_path:
        return CharPoly(H.N, _recurrence([exact(d) for d in H.diag], [exact(p) for p in H.products], exact(1)))
    diag = [float(d) for d in H.diag]
    products = [float(p) for p in H.products]
    coeffs = _recurrence(diag, products, 1.0)
    magnitude = _recurrence([abs(d) for d in diag], [-abs(p) for p in products], 1.0, sign=1.0)
    return CharPoly(H.N, coeffs, magnitude)


def _recurrence(diag, products, one, sign=-1):
    prev, cur = [one], [diag[0] * one, sign * one]
    for k in range(1, len(diag)):
        d = diag[k]
        nxt = [0 * one] * (len(cur) + 1)
        for i, a in enumerate(cur):
            nxt[i] += d * a
            nxt[i + 1] += sign * a
        pk = products[k - 1]
        for i, a in enumerate(prev):
            nxt[i] -= pk * a
        prev, cur = cur, nxt
    return tuple(cur)


@dataclass(frozen=True)
class SecularForm:
    """Monic polynomial in ``s`` plus its binomially normalized coefficients.

    ``raw`` is lowest degree first and has length ``J + 1``; ``normalized``
    is ``(P, Q, ...)`` truncated to length ``J``.
    """

    J: int
    raw: tuple
    normalized: tuple

    @classmethod
    def from_raw(cls, raw) -> "SecularForm":
        raw = _poly.trim(raw)
        if all_exact(raw):
            raw = [exact(a) for a in raw]
        if not raw:
            raise ValueError("zero polynomial is not a secular form")
        lead = raw[-1]
        raw = tuple(a / lead for a in raw) if lead != 1 else tuple(raw)
        J = len(raw) - 1
        normalized = tuple(
            (-1) ** k * raw[J - k] / comb(J, k) for k in range(1, J + 1)
        )
        return cls(J, raw, normalized)

    @classmethod
    def from_normalized(cls, coeffs) -> "SecularForm":
        coeffs = tuple(coeffs)
        J = len(coeffs)
        raw = [0] * (J + 1)
        raw[J] = exact(1) if all_exact(coeffs) else 1.0
        for k, x in enumerate(coeffs, start=1):
            raw[J - k] = (-1) ** k * comb(J, k) * x
        return cls(J, tuple(raw), coeffs)

    @classmethod
    def from_roots(cls, roots) -> "SecularForm":
        return cls.from_raw(_poly.from_roots(list(roots)))

    @property
    def exact(self) -> bool:
        return all_exact(self.raw)

    def coefficient(self, name: str):
        k = NAMES.index(name)
        return self.normalized[k] if k < self.J else None

    P = property(lambda self: self.coefficient("P"))
    Q = property(lambda self: self.coefficient("Q"))
    R = property(lambda self: self.coefficient("R"))
    S = property(lambda self: self.coefficient("S"))
    T = property(lambda self: self.coefficient("T"))

    def as_float(self) -> "SecularForm":
        return SecularForm(
            self.J, tuple(float(a) for a in self.raw), tuple(float(x) for x in self.normalized)
        )

    def as_exact(self) -> "SecularForm":
        return SecularForm(
            self.J, tuple(exact(a) for a in self.raw), tuple(exact(x) for x in self.normalized)
        )

    def truncated(self, J: int) -> "SecularForm":
        """Form built from the first ``J`` normalized coefficients."""
        return SecularForm.from_normalized(self.normalized[:J])

    def __call__(self, s):
        return _poly.evaluate(self.raw, s)

    def root_scale(self) -> float:
        """Typical root magnitude ``max(1, |X_k|**(1/k))``, used to scale margins."""
        return max([1.0] + [abs(float(x)) ** (1.0 / k) for k, x in enumerate(self.normalized, 1)])


def _negligible(values, refs) -> bool:
    if all_exact(values):
        return all(v == 0 for v in values)
    return all(abs(float(v)) <= FLOAT_PARITY_RTOL * r for v, r in zip(values, refs))


def to_secular_form(p: CharPoly, N: int) -> SecularForm:
    coeffs = list(p.coeffs)
    if len(coeffs) != N + 1:
        raise InconsistencyError(f"characteristic polynomial of degree {len(coeffs) - 1}, expected {N}")
    if p.magnitude is not None:
        refs = [max(float(m), 1.0) for m in p.magnitude]
    else:
        refs = [max(abs(float(a)) for a in coeffs)] * len(coeffs)
    if N % 2:
        if not _negligible([coeffs[0]], refs):
            raise InconsistencyError("odd-N characteristic polynomial not divisible by E")
        coeffs, refs = coeffs[1:], refs[1:]
    if not _negligible(coeffs[1::2], refs[1::2]):
        raise InconsistencyError("characteristic polynomial is not even in E after deflation")
    return SecularForm.from_raw(coeffs[0::2])


def secular_form(c: CouplingVector) -> SecularForm:
    return to_secular_form(char_poly(build_chain(c)), c.N)


class Check(NamedTuple):
    name: str
    value: object
    passed: bool


def necessary_conditions(f: SecularForm, epsilon: float = 1e-9) -> list[Check]:
    """Sign status of ``P, Q, ...``; all must be non-negative for real spectra.

    Exact forms are judged exactly; floating forms get a band of
    ``epsilon * scale**k`` for the k-th coefficient.
    """
    sigma = f.root_scale()
    out = []
    for k, (name, x) in enumerate(zip(NAMES, f.normalized), start=1):
        ok = x >= 0 if f.exact else float(x) >= -epsilon * sigma**k
        out.append(Check(name, x, bool(ok)))
    return out
