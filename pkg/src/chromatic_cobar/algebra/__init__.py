"""Exact arithmetic substrate: 2-local rationals, polynomials, truncated series."""
from .modulus import INTEGRAL, MOD2, ModulusSpec, reduce
from .poly import ONE, ZERO, P, Poly, internal_degree, poly_arith, t, v
from .rational import Local2Rational, nu2
from .series import TruncSeries, series_compose, series_reverse

__all__ = [
    "INTEGRAL", "MOD2", "ModulusSpec", "reduce",
    "ONE", "ZERO", "P", "Poly", "internal_degree", "poly_arith", "t", "v",
    "Local2Rational", "nu2",
    "TruncSeries", "series_compose", "series_reverse",
]
