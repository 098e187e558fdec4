"""Truncated power series in one formal variable x over :class:`Poly`.

Coefficients of ``x^n`` for ``n >= order`` are unknown, not zero; asking for
one raises :class:`TruncationExceeded`.
"""
from __future__ import annotations

from typing import List, Mapping, Sequence

from ..errors import BadLeadingTerm, ConstantTerm, ParseError, TruncationExceeded
from .poly import ONE, ZERO, Poly


class TruncSeries:
    __slots__ = ("coefficients", "order")

    def __init__(self, coefficients: Sequence, order: int):
        if order < 1:
            raise ValueError("truncation order must be positive")
        coeffs = [c if isinstance(c, Poly) else Poly.const(c) for c in coefficients]
        if len(coeffs) > order:
            coeffs = coeffs[:order]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coefficients = tuple(coeffs)
        self.order = order

    @classmethod
    def x(cls, order: int) -> "TruncSeries":
        return cls([ZERO, ONE], order)

    @classmethod
    def monomial(cls, coeff: Poly, power: int, order: int) -> "TruncSeries":
        return cls([ZERO] * power + [coeff], order)

    def __getitem__(self, n: int) -> Poly:
        return self.coefficient(n)

    def coefficient(self, n: int) -> Poly:
        if n < 0:
            raise IndexError(n)
        if n >= self.order:
            raise TruncationExceeded(f"coefficient of x^{n} requested from series known to order {self.order}")
        return self.coefficients[n] if n < len(self.coefficients) else ZERO

    def dense(self) -> List[Poly]:
        return [self.coefficient(n) for n in range(self.order)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def agrees_with(self, other: "TruncSeries") -> bool:
        n = min(self.order, other.order)
        return all(self.coefficient(i) == other.coefficient(i) for i in range(n))

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise TruncationExceeded(f"cannot extend series of order {self.order} to {order}")
        return TruncSeries(self.coefficients, order)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries([self.coefficient(i) + other.coefficient(i) for i in range(n)], n)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coefficients], self.order)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def scale(self, c) -> "TruncSeries":
        if not isinstance(c, Poly):
            c = Poly.const(c)
        return TruncSeries([a * c for a in self.coefficients], self.order)

    def map_coefficients(self, fn) -> "TruncSeries":
        return TruncSeries([fn(c) for c in self.coefficients], self.order)

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        # x-adic valuation lets the product be known further than min(order)
        va, vb = self.valuation(), other.valuation()
        n = min(self.order + vb, other.order + va)
        out = [ZERO] * n
        a, b = self.coefficients, other.coefficients
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if i + j >= n:
                    break
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return TruncSeries(out, n)

    def valuation(self) -> int:
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return self.order

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by x^k (k >= 0)."""
        return TruncSeries([ZERO] * k + list(self.coefficients), self.order + k)

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncSeries([ONE], self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse of a series with constant term +-1."""
        c0 = self.coefficient(0)
        if c0 not in (ONE, -ONE):
            raise BadLeadingTerm("only series with constant term +-1 are inverted")
        inv0 = c0
        out = [inv0]
        for n in range(1, self.order):
            acc = ZERO
            for k in range(1, n + 1):
                acc = acc + self.coefficient(k) * out[n - k]
            out.append(-(acc * inv0))
        return TruncSeries(out, self.order)

    def __call__(self, g: "TruncSeries") -> "TruncSeries":
        return series_compose(self, g)

    def __repr__(self) -> str:
        return f"TruncSeries({self}, order={self.order})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coefficients):
            if c:
                xs = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                parts.append(f"({c})*{xs}" if xs else f"({c})")
        return (" + ".join(parts) or "0") + f" + O(x^{self.order})"

    def to_json(self) -> dict:
        return {"order": self.order, "coefficients": [c.to_json() for c in self.dense()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncSeries":
        try:
            return cls([Poly.from_json(c) for c in data["coefficients"]], int(data["order"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed series JSON: {exc}") from exc


def series_compose(h: TruncSeries, g: TruncSeries) -> TruncSeries:
    """h(g(x)), truncated to min(h.order, g.order)."""
    if g.coefficient(0):
        raise ConstantTerm("inner series must have zero constant term")
    n = min(h.order, g.order)
    g = g.truncate(n)
    result = TruncSeries([h.coefficient(0)], n)
    power = TruncSeries([ONE], n)
    for k in range(1, n):
        power = (power * g).truncate(n)
        hk = h.coefficient(k)
        if hk:
            result = result + power.scale(hk)
    return result


def series_reverse(g: TruncSeries) -> TruncSeries:
    """Compositional inverse of ``g = x + ...`` to the same truncation order."""
    n = g.order
    if n < 2 or g.coefficient(0) or g.coefficient(1) != ONE:
        raise BadLeadingTerm("series_reverse needs g = x + higher terms")
    h = [ZERO, ONE]
    for k in range(2, n):
        trial = series_compose(g.truncate(k + 1), TruncSeries(h, k + 1))
        h.append(-trial.coefficient(k))
    return TruncSeries(h, n)
