"""Exact 2-local rationals.

Coefficients are stored as ``int`` whenever they are integral and as
:class:`fractions.Fraction` otherwise; ``Fraction`` already keeps lowest terms
with a positive denominator, so it serves directly as the 2-local rational
type.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Local2Rational = Fraction
Coeff = Union[int, Fraction]

INFINITY = math.inf


def normalize(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def as_rational(value) -> Coeff:
    """Coerce ints, Fractions and ``"num/den"`` strings to a coefficient."""
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return normalize(value)
    if isinstance(value, str):
        return normalize(Fraction(value.strip()))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def nu2_int(n: int):
    if n == 0:
        return INFINITY
    n = abs(n)
    return (n & -n).bit_length() - 1


def nu2(x):
    """2-adic valuation of an integer or rational; ``math.inf`` for zero."""
    if isinstance(x, int):
        return nu2_int(x)
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return nu2_int(x.numerator) - nu2_int(x.denominator)


def is_2_integral(c: Coeff) -> bool:
    return isinstance(c, int) or c.denominator % 2 == 1


def residue_mod_2k(c: Coeff, k: int) -> int:
    """Least non-negative residue of a 2-integral rational modulo ``2**k``."""
    m = 1 << k
    if isinstance(c, int):
        return c % m
    if c.denominator % 2 == 0:
        raise ValueError(f"{c} is not 2-integral")
    return (c.numerator * pow(c.denominator, -1, m)) % m


def format_rational(c: Coeff) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"
