"""Sparse graded polynomials over the 2-local rationals.

Generators are keyed by ``(family, index)``.  The families are

* ``v`` -- Hazewinkel generators of BP_*,
* ``t``, ``u``, ``w`` -- the t_n in the first, second and third tensor slot of
  BP_*BP^{(x)s} (all v's are kept in the leftmost slot),
* ``l`` -- logarithm coefficients (internal only),
* ``x`` -- formal-variable placeholders of degree -2, used for multivariate
  formal group computations.

A monomial is a sorted tuple of ``((rank, index), exponent)`` pairs where
``rank`` is the position of the family in :data:`FAMILIES`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from ..errors import NonIntegral, ParseError
from .rational import Coeff, as_rational, format_rational, is_2_integral, normalize, nu2

FAMILIES = ("v", "t", "u", "w", "l", "x")
_RANK = {f: i for i, f in enumerate(FAMILIES)}
TENSOR_FAMILIES = ("t", "u", "w")

Gen = Tuple[int, int]
Monomial = Tuple[Tuple[Gen, int], ...]

INHOMOGENEOUS = "inhomogeneous"


def gen(family: str, index: int) -> Gen:
    if family not in _RANK:
        raise ValueError(f"unknown generator family {family!r}")
    if index < 1:
        raise ValueError("generator index must be positive")
    return (_RANK[family], index)


def gen_family(g: Gen) -> str:
    return FAMILIES[g[0]]


def gen_name(g: Gen) -> str:
    return f"{FAMILIES[g[0]]}{g[1]}"


def gen_degree(g: Gen, p: int = 2) -> int:
    if FAMILIES[g[0]] == "x":
        return -2
    return 2 * (p ** g[1] - 1)


_NAME_RE = re.compile(r"^([a-z])(\d+)$")


def parse_gen(name: str) -> Gen:
    m = _NAME_RE.match(name)
    if not m:
        raise ParseError(f"bad generator name {name!r}")
    return gen(m.group(1), int(m.group(2)))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for g, e in b:
        d[g] = d.get(g, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial, p: int = 2) -> int:
    return sum(gen_degree(g, p) * e for g, e in m)


def mono_exponent(m: Monomial, g: Gen) -> int:
    for h, e in m:
        if h == g:
            return e
    return 0


def mono_str(m: Monomial) -> str:
    parts = []
    for g, e in m:
        parts.append(gen_name(g) if e == 1 else f"{gen_name(g)}^{e}")
    return "*".join(parts)


def mono_from_dict(exps: Mapping) -> Monomial:
    items = {}
    for k, e in exps.items():
        g = parse_gen(k) if isinstance(k, str) else k
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            items[g] = items.get(g, 0) + int(e)
    return tuple(sorted(items.items()))


def _sort_key(m: Monomial):
    return (sum(e for _, e in m), m)


class Poly:
    """An immutable sparse polynomial; no zero coefficients are ever stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Coeff]] = None):
        clean: Dict[Monomial, Coeff] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = normalize(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, Coeff]) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        c = as_rational(c)
        return cls._wrap({(): c} if c else {})

    @classmethod
    def generator(cls, family: str, index: int, exponent: int = 1) -> "Poly":
        if exponent == 0:
            return cls.const(1)
        return cls._wrap({((gen(family, index), exponent),): 1})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "Poly":
        return cls({m: as_rational(c)})

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return _Parser(text).parse()

    zero: "Poly"
    one: "Poly"

    # -- inspection -----------------------------------------------------
    def items(self) -> Iterator[Tuple[Monomial, Coeff]]:
        return iter(self._terms.items())

    def monomials(self) -> Iterable[Monomial]:
        return self._terms.keys()

    def coefficient(self, m: Monomial) -> Coeff:
        return self._terms.get(m, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Coeff:
        return self._terms.get((), 0)

    def generators(self) -> set:
        return {g for m in self._terms for g, _ in m}

    def families(self) -> set:
        return {gen_family(g) for g in self.generators()}

    def internal_degree(self, p: int = 2):
        """Common internal degree of all terms; ``None`` for the zero polynomial."""
        degs = {mono_degree(m, p) for m in self._terms}
        if not degs:
            return None
        if len(degs) > 1:
            return INHOMOGENEOUS
        return degs.pop()

    def is_integral(self) -> bool:
        return all(is_2_integral(c) for c in self._terms.values())

    def min_nu2(self):
        return min((nu2(c) for c in self._terms.values()), default=float("inf"))

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = normalize(s)
            else:
                out.pop(m, None)
        return Poly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: Dict[Monomial, Coeff] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly({m: c for m, c in out.items() if c})

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        if c == 0:
            return ZERO
        if c == 1:
            return self
        return Poly._wrap({m: normalize(v * c) for m, v in self._terms.items()})

    def __truediv__(self, c) -> "Poly":
        if isinstance(c, Poly):
            return NotImplemented
        return self.scale(Fraction(1) / as_rational(c))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- transformations ------------------------------------------------
    def map_coefficients(self, fn: Callable[[Coeff], Coeff]) -> "Poly":
        return Poly({m: fn(c) for m, c in self._terms.items()})

    def filter(self, pred: Callable[[Monomial], bool]) -> "Poly":
        return Poly._wrap({m: c for m, c in self._terms.items() if pred(m)})

    def substitute(self, assignment: Mapping) -> "Poly":
        """Ring homomorphism sending each assigned generator to a polynomial.

        Generators absent from ``assignment`` are left fixed.
        """
        images: Dict[Gen, Poly] = {}
        for k, val in assignment.items():
            g = parse_gen(k) if isinstance(k, str) else k
            images[g] = _coerce(val)
        powers: Dict[Tuple[Gen, int], Poly] = {}

        def power(g: Gen, e: int) -> Poly:
            key = (g, e)
            if key not in powers:
                if e == 1:
                    powers[key] = images[g]
                else:
                    half = power(g, e // 2)
                    sq = half * half
                    powers[key] = sq * images[g] if e % 2 else sq
            return powers[key]

        out = ZERO
        acc: Dict[Monomial, Coeff] = {}
        for m, c in self._terms.items():
            fixed = tuple((g, e) for g, e in m if g not in images)
            moving = [(g, e) for g, e in m if g in images]
            if not moving:
                acc[fixed] = acc.get(fixed, 0) + c
                continue
            term = Poly._wrap({fixed: c})
            for g, e in moving:
                term = term * power(g, e)
                if not term:
                    break
            out = out + term
        if acc:
            out = out + Poly(acc)
        return out

    def rename_families(self, mapping: Mapping[str, str]) -> "Poly":
        rank_map = {_RANK[a]: _RANK[b] for a, b in mapping.items()}
        out: Dict[Monomial, Coeff] = {}
        for m, c in self._terms.items():
            d: Dict[Gen, int] = {}
            for (r, i), e in m:
                g = (rank_map.get(r, r), i)
                d[g] = d.get(g, 0) + e
            nm = tuple(sorted(d.items()))
            out[nm] = out.get(nm, 0) + c
        return Poly(out)

    def require_integral(self) -> "Poly":
        if not self.is_integral():
            raise NonIntegral(f"non-integral coefficient in {self}")
        return self

    # -- formatting -----------------------------------------------------
    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_items()):
            neg = c < 0
            a = -c if neg else c
            ms = mono_str(m)
            if ms:
                body = ms if a == 1 else f"{a}*{ms}"
            else:
                body = str(a)
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"c": format_rational(c), "e": {gen_name(g): e for g, e in m}}
                for m, c in self.sorted_items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Poly":
        terms: Dict[Monomial, Coeff] = {}
        try:
            for t in data["terms"]:
                m = mono_from_dict(t.get("e", {}))
                c = as_rational(t["c"])
                if isinstance(c, float):
                    raise ParseError("floats are not allowed")
                terms[m] = terms.get(m, 0) + c
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from exc
        return cls(terms)


ZERO = Poly._wrap({})
ONE = Poly._wrap({(): 1})
Poly.zero = ZERO
Poly.one = ONE


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Poly.const(x)
    raise TypeError(f"cannot use {x!r} as a polynomial")


def v(n: int, e: int = 1) -> Poly:
    return Poly.generator("v", n, e)


def t(n: int, e: int = 1) -> Poly:
    return Poly.generator("t", n, e)


def P(text: str) -> Poly:
    """Shorthand for :meth:`Poly.parse`."""
    return Poly.parse(text)


def poly_arith(op: str, a: Poly, b) -> Poly:
    """Dispatch ``add``, ``mul``, ``scale`` or ``substitute``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    if op == "substitute":
        return a.substitute(b)
    raise ValueError(f"unknown operation {op!r}")


def internal_degree(a: Poly, p: int = 2):
    return a.internal_degree(p)


class _Parser:
    """Recursive-descent parser for expressions like ``2*t2 - 5*v1*t1^2 + (v1+t1)^2``."""

    _TOKEN = re.compile(r"\s*(?:(\d+)|([a-z]\d+)|(.))")

    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"cannot tokenize {text!r}")
            if m.group(1):
                self.tokens.append(("num", int(m.group(1))))
            elif m.group(2):
                self.tokens.append(("gen", m.group(2)))
            elif m.group(3).strip():
                self.tokens.append(("op", m.group(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ParseError("empty polynomial expression")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"unexpected trailing input in {self.text!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                k, n = self.take()
                if k != "num":
                    raise ParseError("division only by integer literals")
                acc = acc / n
            elif kind in ("gen", "num") or (kind == "op" and val == "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, n = self.take()
            if k != "num":
                raise ParseError("exponent must be an integer literal")
            return base ** n
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(val)
        if kind == "gen":
            g = parse_gen(val)
            return Poly._wrap({((g, 1),): 1})
        if kind == "op" and val == "(":
            p = self.expr()
            k, v_ = self.take()
            if (k, v_) != ("op", ")"):
                raise ParseError("unbalanced parentheses")
            return p
        if kind == "op" and val == "-":
            return -self.factor()
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")
