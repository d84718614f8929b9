"""Exact rational scalars.

All exact arithmetic runs on ``gmpy2.mpq``; it compares and hashes equal to
``fractions.Fraction`` but is an order of magnitude faster, which matters for
bulk oracle runs.
"""
from fractions import Fraction

from gmpy2 import mpq

MPQ = type(mpq(0))
EXACT_TYPES = (int, Fraction, MPQ)


def is_exact(x) -> bool:
    return isinstance(x, EXACT_TYPES) and not isinstance(x, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def exact(x):
    """Convert ``x`` to an exact rational without rounding.

    Floats become the binary rational they already represent; strings are
    parsed as ``Fraction`` literals ("5/3", "0.25").
    """
    if isinstance(x, MPQ):
        return x
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    return mpq(float(x))


def as_fraction(x) -> Fraction:
    q = exact(x)
    return Fraction(int(q.numerator), int(q.denominator))
