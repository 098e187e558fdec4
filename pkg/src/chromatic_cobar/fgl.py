"""The universal p-typical formal group law over BP_* (Hazewinkel generators).

Everything is exact.  The logarithm has rational coefficients; the formal
sum, the p-series, the right unit, the coproduct and the universal
isomorphism are integral, and every builder checks that.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, Sequence, Tuple

from .algebra.poly import ONE, TENSOR_FAMILIES, ZERO, Poly, gen, gen_family, mono_exponent
from .algebra.series import TruncSeries, series_compose, series_reverse
from .errors import ConstantTerm, IntegralityFailure

P2 = 2


def _check_integral(p: Poly, what: str) -> Poly:
    if not p.is_integral():
        raise IntegralityFailure(f"{what} has a non-integral coefficient: {p}")
    return p


def _check_series(s: TruncSeries, what: str) -> TruncSeries:
    for i, c in enumerate(s.coefficients):
        _check_integral(c, f"coefficient of x^{i} in {what}")
    return s


@lru_cache(maxsize=None)
def log_coefficients(p: int, n_max: int) -> Tuple[Poly, ...]:
    """(l_0, ..., l_{n_max}) as rational polynomials in the v's.

    Hazewinkel recursion: p*l_n = sum_{0<=i<n} l_i * v_{n-i}^{p^i}.
    """
    ls = [ONE]
    for n in range(1, n_max + 1):
        acc = ZERO
        for i in range(n):
            acc = acc + ls[i] * Poly.generator("v", n - i, p ** i)
        ls.append(acc / p)
    return tuple(ls)


def _log_depth(p: int, order: int) -> int:
    n = 0
    while p ** (n + 1) < order:
        n += 1
    return n


def hazewinkel_log(p: int, n_max: int, order: int = None) -> TruncSeries:
    """log(x) = sum l_i x^{p^i}; ``order`` defaults to p^n_max + 1."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if order is None:
        order = p ** n_max + 1
    ls = log_coefficients(p, n_max)
    coeffs = [ZERO] * order
    for i, li in enumerate(ls):
        if p ** i < order:
            coeffs[p ** i] = li
    return TruncSeries(coeffs, order)


def _trunc_x(poly: Poly, order: int) -> Poly:
    """Drop monomials whose total placeholder-x degree is >= order."""
    xr = gen("x", 1)[0]
    return poly.filter(lambda m: sum(e for (r, _), e in m if r == xr) < order)


@dataclass(frozen=True)
class FormalGroupData:
    p: int
    order: int
    log: TruncSeries
    exp: TruncSeries
    two_series: TruncSeries
    iso_f: TruncSeries
    iso_f_inv: TruncSeries
    _cache: Dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def c(self) -> Tuple[Poly, ...]:
        """Coefficients c_i of [p]_F(x) = sum c_i x^{i+1}."""
        return tuple(self.two_series.coefficient(i + 1) for i in range(self.order - 1))

    @cached_property
    def F(self) -> Poly:
        """F(x1, x2) as a polynomial in v's and placeholders x1, x2, total x-degree < order."""
        x1 = Poly.generator("x", 1)
        x2 = Poly.generator("x", 2)
        z = ZERO
        for i, li in enumerate(self.log.coefficients):
            if li:
                z = z + li * (x1 ** i + x2 ** i)
        out = ZERO
        power = ONE
        for k in range(1, self.order):
            power = _trunc_x(power * z, self.order)
            ek = self.exp.coefficient(k)
            if ek:
                out = out + ek * power
        return _check_integral(out, "F(x,y)")

    def apply_F(self, a: TruncSeries, b: TruncSeries) -> TruncSeries:
        return formal_sum([a, b], self)


def build_fgl(p: int = P2, order: int = 4) -> FormalGroupData:
    if order < 2:
        raise ValueError("order must be >= 2")
    n = max(1, _log_depth(p, order))
    log = hazewinkel_log(p, n, order)
    exp = series_reverse(log)
    two = _check_series(series_compose(exp, log.scale(p)), "[p]_F(x)")
    f_inv = _check_series(_iso_inverse(p, order, log, exp), "f^{-1}(x)")
    f = _check_series(series_reverse(f_inv), "f(x)")
    return FormalGroupData(p=p, order=order, log=log, exp=exp, two_series=two, iso_f=f, iso_f_inv=f_inv)


def _formal_sum(terms: Sequence[TruncSeries], log: TruncSeries, exp: TruncSeries) -> TruncSeries:
    if not terms:
        raise ValueError("formal_sum of an empty list")
    for s in terms:
        if s.coefficient(0):
            raise ConstantTerm("formal_sum terms must have zero constant term")
    n = min([s.order for s in terms] + [log.order, exp.order])
    total = None
    for s in terms:
        piece = series_compose(log.truncate(n), s.truncate(n))
        total = piece if total is None else total + piece
    return series_compose(exp.truncate(n), total)


def formal_sum(terms: Sequence[TruncSeries], fgl: FormalGroupData) -> TruncSeries:
    """Iterated formal sum F(F(a1, a2), a3)..., computed through the logarithm."""
    return _check_series(_formal_sum(terms, fgl.log, fgl.exp), "formal sum")


def _iso_inverse(p, order, log, exp) -> TruncSeries:
    terms = [TruncSeries.x(order)]
    i = 1
    while p ** i < order:
        terms.append(TruncSeries.monomial(Poly.generator("t", i), p ** i, order))
        i += 1
    return _formal_sum(terms, log, exp)


def universal_iso(fgl: FormalGroupData) -> Tuple[TruncSeries, TruncSeries]:
    """(f, f^{-1}) with f^{-1}(x) = sum^F t_i x^{p^i}."""
    return fgl.iso_f, fgl.iso_f_inv


@lru_cache(maxsize=None)
def fgl_data(order: int, p: int = P2) -> FormalGroupData:
    """Memoized :func:`build_fgl`; values are immutable so sharing is safe."""
    return build_fgl(p, order)


# -- Hopf algebroid structure maps -------------------------------------

def _t(n: int, family: str = "t") -> Poly:
    return ONE if n == 0 else Poly.generator(family, n)


@lru_cache(maxsize=None)
def _right_unit_l(n: int, p: int = P2) -> Poly:
    """eta_R(l_n) = sum_{i+j=n} l_i t_j^{p^i}."""
    ls = log_coefficients(p, n)
    acc = ZERO
    for i in range(n + 1):
        acc = acc + ls[i] * _t(n - i) ** (p ** i)
    return acc


@lru_cache(maxsize=None)
def _right_unit(n: int, p: int = P2) -> Poly:
    # p*eta_R(l_n) = sum_{0<=i<n} eta_R(l_i) eta_R(v_{n-i})^{p^i}
    acc = _right_unit_l(n, p).scale(p)
    for i in range(1, n):
        acc = acc - _right_unit_l(i, p) * _right_unit(n - i, p) ** (p ** i)
    return _check_integral(acc, f"eta_R(v{n})")


def right_unit(n: int, bound: int = None, p: int = P2) -> Poly:
    """eta_R(v_n) as an integral polynomial in v's and t's."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if bound is not None and 2 * (p ** n - 1) > bound:
        raise ValueError(f"degree of v{n} exceeds bound {bound}")
    return _right_unit(n, p)


def apply_right_unit(a: Poly, p: int = P2) -> Poly:
    """Ring map eta_R applied to a polynomial in the v's."""
    vs = {g for g in a.generators() if g[0] == 0}
    return a.substitute({g: _right_unit(g[1], p) for g in vs})


def counit(a: Poly) -> Poly:
    """Set every t_n (in any tensor slot) to zero."""
    return a.filter(lambda m: not any(gen_family(g) in TENSOR_FAMILIES for g, _ in m))


@lru_cache(maxsize=None)
def _coproduct(n: int, p: int = P2) -> Poly:
    ls = log_coefficients(p, n)
    rhs = ZERO
    for i in range(n + 1):
        for j in range(n - i + 1):
            k = n - i - j
            rhs = rhs + ls[i] * _t(j) ** (p ** i) * _t(k, "u") ** (p ** (i + j))
    for i in range(1, n + 1):
        rhs = rhs - ls[i] * _coproduct(n - i, p) ** (p ** i)
    return _check_integral(rhs, f"Delta(t{n})")


def coproduct(n: int, bound: int = None, p: int = P2) -> Poly:
    """Delta(t_n) in BP_*BP (x) BP_*BP, written with t (left slot) and u (right slot)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if bound is not None and 2 * (p ** n - 1) > bound:
        raise ValueError(f"degree of t{n} exceeds bound {bound}")
    return _coproduct(n, p)


def apply_coproduct(a: Poly, p: int = P2) -> Poly:
    """Delta applied to a one-slot element (v's and t's); left BP_*-linear."""
    ts = {g for g in a.generators() if g[0] == 1}
    return a.substitute({g: _coproduct(g[1], p) for g in ts})


def reduced_coproduct(a: Poly, p: int = P2) -> Poly:
    """Delta(a) - a(x)1 - 1(x)a for ``a`` in the augmentation ideal."""
    return apply_coproduct(a, p) - a - as_right_slot(a, p)


def as_right_slot(a: Poly, p: int = P2) -> Poly:
    """1 (x) a: rename t to u and move the v coefficients across the left slot."""
    return apply_right_unit(a.rename_families({"t": "u"}), p)


def two_series_mod2_leading(fgl: FormalGroupData) -> Dict[int, Poly]:
    """Mod-2 reductions of the c_i, keyed by i."""
    from .algebra.modulus import MOD2, reduce

    return {i: reduce(c, MOD2) for i, c in enumerate(fgl.c)}


def v1_exponent(m) -> int:
    return mono_exponent(m, gen("v", 1))
