"""Reduced cobar complex in cohomological degrees s <= 2, Ext in a single bidegree,
and identification of named classes.

C^s(M) = M (x) BPBP~^{(x)s}, with the conventions of :mod:`comodule`:

    d(m)      = psi(m) - m (x) 1
    d(m | g)  = psibar(m) | g - m | Deltabar(g)

where psibar(m) = psi(m) - m (x) 1 and Deltabar(g) = Delta(g) - g(x)1 - 1(x)g.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra.modulus import INTEGRAL, MOD2, ModulusSpec, reduce
from .algebra.poly import (ONE, TENSOR_FAMILIES, ZERO, Monomial, Poly, gen, gen_degree,
                           gen_family, mono_degree)
from .algebra.rational import format_rational, nu2
from .comodule import Comodule, MooreQuotient, Terms, add_terms
from .errors import DegreeTooLarge, NotDivisible
from .fgl import apply_right_unit, coproduct, right_unit
from . import linalg

SLOT_FAMILY = {1: "t", 2: "u"}


@dataclass(frozen=True)
class CobarElement:
    s: int
    terms: Tuple[Tuple[int, Poly], ...] = ()

    @classmethod
    def make(cls, s: int, terms: Terms) -> "CobarElement":
        return cls(s, tuple(sorted((j, p) for j, p in terms.items() if p)))

    @classmethod
    def scalar(cls, s: int, p, cell: int = 0) -> "CobarElement":
        if isinstance(p, str):
            p = Poly.parse(p)
        return cls.make(s, {cell: p})

    @property
    def as_dict(self) -> Terms:
        return dict(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def cell(self, j: int) -> Poly:
        return self.as_dict.get(j, ZERO)

    def lowest_cell(self) -> Optional[int]:
        return self.terms[0][0] if self.terms else None

    def __add__(self, other: "CobarElement") -> "CobarElement":
        _same_s(self, other)
        return CobarElement.make(self.s, add_terms(self.as_dict, other.as_dict))

    def __sub__(self, other: "CobarElement") -> "CobarElement":
        _same_s(self, other)
        return CobarElement.make(self.s, add_terms(self.as_dict, {j: -p for j, p in other.terms}))

    def __neg__(self):
        return CobarElement(self.s, tuple((j, -p) for j, p in self.terms))

    def scale(self, c) -> "CobarElement":
        return CobarElement.make(self.s, {j: (p * c if isinstance(c, Poly) else p.scale(c)) for j, p in self.terms})

    def degree(self, pres: Comodule) -> Optional[int]:
        return pres.element_degree(self.as_dict)

    def format(self, pres: Optional[Comodule] = None) -> str:
        if not self.terms:
            return "0"
        if pres is None or len(pres.cells) == 1:
            if len(self.terms) == 1 and self.terms[0][0] == 0:
                return str(self.terms[0][1])
        names = (lambda j: pres.cell_name(j)) if pres else (lambda j: f"[{j}]")
        return " + ".join(f"({p})*{names(j)}" for j, p in self.terms)

    def to_json(self) -> dict:
        return {"s": self.s, "cells": [{"cell": j, **p.to_json()} for j, p in self.terms]}

    @classmethod
    def from_json(cls, data) -> "CobarElement":
        terms = {}
        for item in data["cells"]:
            terms[int(item.get("cell", 0))] = Poly.from_json(item)
        return cls.make(int(data["s"]), terms)


def _same_s(a, b):
    if a.s != b.s:
        raise ValueError("cobar degrees differ")


# -- the differential ------------------------------------------------------

def _split_v(m: Monomial) -> Tuple[Monomial, Monomial]:
    vs = tuple((g, e) for g, e in m if gen_family(g) == "v")
    rest = tuple((g, e) for g, e in m if gen_family(g) != "v")
    return vs, rest


@lru_cache(maxsize=None)
def _reduced_coproduct_t(tpart: Monomial) -> Poly:
    """Deltabar of a monomial in the t's only."""
    t_mono = Poly.monomial(tpart)
    delta = ONE
    for g, e in tpart:
        delta = delta * coproduct(g[1]) ** e
    return delta - t_mono - t_mono.rename_families({"t": "u"})


def _check_reduced(p: Poly, s: int) -> None:
    for m in p.monomials():
        fams = {gen_family(g) for g, _ in m}
        for slot in range(1, s + 1):
            if SLOT_FAMILY[slot] not in fams:
                raise ValueError(f"cobar element not reduced: monomial {m} misses slot {slot}")


def cobar_d(e: CobarElement, pres: Comodule) -> CobarElement:
    """The cobar differential C^s -> C^{s+1}, s in {0, 1}, in normal form."""
    terms = pres.normalize(e.as_dict)
    if e.s == 0:
        psi = pres.psi(terms)
        return CobarElement.make(1, pres.normalize(add_terms(psi, {j: -p for j, p in terms.items()})))
    if e.s == 1:
        out: Terms = {}
        for j, p in terms.items():
            _check_reduced(p, 1)
            for m, c in p.items():
                vpart, tpart = _split_v(m)
                vp = Poly.monomial(vpart, c)
                upart = Poly.monomial(tpart).rename_families({"t": "u"})
                # psibar(v x^j) | g
                rv = apply_right_unit(vp)
                for jj, g in pres.coaction(j).items():
                    out[jj] = out.get(jj, ZERO) + rv * g * upart
                out[j] = out.get(j, ZERO) - vp * upart
                # - v x^j | Deltabar(g)
                out[j] = out.get(j, ZERO) - vp * _reduced_coproduct_t(tpart)
        return CobarElement.make(2, pres.normalize({j: p for j, p in out.items() if p}))
    raise ValueError("cobar_d is implemented for s = 0 and s = 1")


def is_cocycle(e: CobarElement, pres: Comodule) -> bool:
    return not cobar_d(e, pres)


# -- monomial bases ----------------------------------------------------------

BASIS_LIMIT = 20000


@lru_cache(maxsize=None)
def _family_monomials(family: str, degree: int) -> Tuple[Monomial, ...]:
    """All monomials in one generator family of the given internal degree."""
    if degree < 0 or degree % 2:
        return ()
    gens = []
    n = 1
    while 2 * (2 ** n - 1) <= degree:
        gens.append(gen(family, n))
        n += 1

    out = []

    def rec(k: int, left: int, acc: list):
        if left == 0:
            out.append(tuple(sorted(acc)))
            return
        if k < 0:
            return
        g = gens[k]
        dg = gen_degree(g)
        for e in range(left // dg, -1, -1):
            rec(k - 1, left - e * dg, acc + ([(g, e)] if e else []))

    rec(len(gens) - 1, degree, [])
    return tuple(sorted(set(out)))


def _mono_product(*parts: Monomial) -> Monomial:
    return tuple(sorted(p for part in parts for p in part))


@lru_cache(maxsize=None)
def cobar_basis(s: int, t: int, modulus: ModulusSpec = INTEGRAL) -> Tuple[Monomial, ...]:
    """Monomial basis of C^s(BP_*/I) in internal degree t (Moore quotients only)."""
    vpowers = [(gen("v", i), e) for i, e in enumerate(modulus.v_powers, 1)]

    def v_ok(m: Monomial) -> bool:
        d = dict(m)
        return all(d.get(g, 0) < e for g, e in vpowers)

    slots = [SLOT_FAMILY[k] for k in range(1, s + 1)]
    out = []

    def rec(k: int, left: int, acc: Tuple[Monomial, ...]):
        if k == len(slots):
            for vm in _family_monomials("v", left):
                if v_ok(vm):
                    out.append(_mono_product(vm, *acc))
            return
        for d in range(2, left + 1, 2):
            for tm in _family_monomials(slots[k], d):
                rec(k + 1, left - d, acc + (tm,))

    rec(0, t, ())
    if len(out) > BASIS_LIMIT:
        raise DegreeTooLarge(f"C^{s} in degree {t} has {len(out)} monomials")
    return tuple(sorted(out))


def _index(basis: Sequence[Monomial]) -> Dict[Monomial, int]:
    return {m: k for k, m in enumerate(basis)}


def _as_int_vector(p: Poly, index: Dict[Monomial, int]) -> List[int]:
    vec = [0] * len(index)
    for m, c in p.items():
        if getattr(c, "denominator", 1) != 1:
            raise ValueError(f"non-integer coefficient {c} in a cobar matrix")
        vec[index[m]] = int(c)
    return vec


def _as_bits(p: Poly, index: Dict[Monomial, int]) -> int:
    v = 0
    for m, c in p.items():
        if int(c) % 2:
            v |= 1 << index[m]
    return v


def _from_int_vector(vec: Sequence[int], basis: Sequence[Monomial]) -> Poly:
    return Poly({basis[k]: c for k, c in enumerate(vec) if c})


def _from_bits(v: int, basis: Sequence[Monomial]) -> Poly:
    return Poly({basis[k]: 1 for k in range(len(basis)) if v >> k & 1})


def _d_poly(s: int, p: Poly, pres: Comodule) -> Poly:
    return cobar_d(CobarElement.make(s, {0: p}), pres).cell(0)


@lru_cache(maxsize=None)
def _integral_matrix(s: int, t: int) -> Tuple[Tuple[Tuple[int, ...], ...], int]:
    """Matrix of d: C^s(BP_*) -> C^{s+1}(BP_*) in degree t, as rows."""
    pres = MooreQuotient(INTEGRAL)
    src = cobar_basis(s, t, INTEGRAL)
    tgt_index = _index(cobar_basis(s + 1, t, INTEGRAL))
    cols = [_as_int_vector(_d_poly(s, Poly.monomial(m), pres), tgt_index) for m in src]
    rows = tuple(tuple(col[r] for col in cols) for r in range(len(tgt_index)))
    return rows, len(src)


@lru_cache(maxsize=None)
def _f2_columns(s: int, t: int, modulus: ModulusSpec) -> Tuple[int, ...]:
    """Columns (bitmasks) of d: C^s(BP_*/I) -> C^{s+1}(BP_*/I) with I containing 2."""
    pres = MooreQuotient(modulus)
    src = cobar_basis(s, t, modulus)
    tgt_index = _index(cobar_basis(s + 1, t, modulus))
    return tuple(_as_bits(_d_poly(s, Poly.monomial(m), pres), tgt_index) for m in src)


# -- Ext in one bidegree ---------------------------------------------------

@dataclass(frozen=True)
class ExtReport:
    s: int
    t: int
    modulus: ModulusSpec
    invariant_factors: Tuple[int, ...]
    representatives: Tuple[CobarElement, ...]
    precision: int = 1

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "mod": self.modulus.label(),
            "factors": list(self.invariant_factors),
            "reps": [str(r.cell(0)) for r in self.representatives],
        }

    def format_text(self) -> str:
        facts = ", ".join("Z" if f == 0 else f"Z/{f}" for f in self.invariant_factors) or "0"
        lines = [f"Ext^{{{self.s},{self.t}}}({self.modulus.label()}) = {facts}"]
        for f, r in zip(self.invariant_factors, self.representatives):
            lines.append(f"  {'Z' if f == 0 else f'Z/{f}'}: {r.cell(0)}")
        return "\n".join(lines)


def _modulus_of(pres) -> ModulusSpec:
    if isinstance(pres, ModulusSpec):
        return pres
    if not isinstance(pres, MooreQuotient):
        raise ValueError("ext_bidegree is implemented for Moore quotients BP_*/I")
    return pres.modulus


def ext_bidegree(s: int, t: int, pres, two_power: int = 8) -> ExtReport:
    """Ext^{s,t} of a Moore quotient, with invariant factors and cocycle representatives.

    Integral runs use Smith form over Z/2^K starting at K = ``two_power`` and
    doubling K until every factor is certified below 2^K.  An invariant
    factor 0 stands for a copy of Z_(2).
    """
    if s < 0 or s > 1:
        raise ValueError("ext_bidegree supports s = 0 and s = 1")
    modulus = _modulus_of(pres)
    n = modulus.power_of_two
    if n == 1:
        return _ext_f2(s, t, modulus)
    if modulus.v_powers:
        raise ValueError("ideals (2^N, v1^a, ...) with N > 1 are not supported")
    return _ext_integral(s, t, modulus, n, two_power)


def _ext_f2(s: int, t: int, modulus: ModulusSpec) -> ExtReport:
    basis = cobar_basis(s, t, modulus)
    image = _f2_columns(s - 1, t, modulus) if s > 0 else ()
    kernel = linalg.f2_kernel(_f2_columns(s, t, modulus))
    span = linalg.F2Span()
    for col in image:
        span.add(col)
    reps = []
    for vec in kernel:
        if span.add(vec):
            reps.append(CobarElement.make(s, {0: _from_bits(vec, basis)}))
    return ExtReport(s, t, modulus, tuple([2] * len(reps)), tuple(reps), 1)


def _snf_certified(rows, ncols, K):
    rank = linalg.rational_rank([list(r) for r in rows], ncols) if rows and ncols else 0
    while True:
        vals, P, V = linalg.snf_mod2k([list(r) for r in rows], ncols, K)
        if len(vals) == rank and all(v < K - 1 for v in vals):
            return vals, P, V, K
        K *= 2


def _integral_pieces(s: int, t: int, K: int):
    """Torsion (valuation, rep vector) and free rep vectors of H^s(C(BP_*)) in degree t."""
    basis = cobar_basis(s, t, INTEGRAL)
    n = len(basis)
    torsion = []
    if s > 0:
        rows, ncols = _integral_matrix(s - 1, t)
        vals, P, V, K = _snf_certified(rows, ncols, K)
        prev = [list(r) for r in rows]
        for i, v in enumerate(vals):
            if v >= 1:
                img = linalg.mat_vec(prev, linalg.column(V, i))
                torsion.append((v, [x >> v for x in img]))
        image_cols = [[r[c] for r in rows] for c in range(ncols)]
    else:
        image_cols = []
    rows_s, ncols_s = _integral_matrix(s, t)
    kernel = linalg.rational_kernel([list(r) for r in rows_s], ncols_s) if rows_s else \
        [[int(i == j) for i in range(n)] for j in range(n)]
    free = []
    current = list(image_cols)
    base_rank = linalg.rational_rank(_transpose(current, n), len(current)) if current else 0
    for vec in kernel:
        trial = current + [vec]
        r = linalg.rational_rank(_transpose(trial, n), len(trial))
        if r > base_rank:
            current, base_rank = trial, r
            free.append(vec)
    return basis, torsion, free, K


def _transpose(cols: List[List[int]], n: int) -> List[List[int]]:
    return [[c[r] for c in cols] for r in range(n)]


def _ext_integral(s: int, t: int, modulus: ModulusSpec, n: Optional[int], K: int) -> ExtReport:
    basis, torsion, free, K = _integral_pieces(s, t, K)
    factors, reps = [], []
    for v, vec in sorted(torsion, key=lambda p: p[0]):
        e = v if n is None else min(v, n)
        factors.append(2 ** e)
        reps.append(vec)
    for vec in free:
        factors.append(0 if n is None else 2 ** n)
        reps.append(vec)
    if n is not None:
        # Tor(H^{s+1}(C), Z/2^n): classes w with d(w) = 2^v z
        rows, ncols = _integral_matrix(s, t)
        if rows and ncols:
            vals, P, V, K = _snf_certified(rows, ncols, K)
            for i, v in enumerate(vals):
                if v >= 1:
                    w = linalg.column(V, i)
                    w = [x << max(0, n - v) for x in w]
                    factors.append(2 ** min(v, n))
                    reps.append(w)
    elts = []
    for vec in reps:
        p = _from_int_vector(vec, basis)
        if n is not None:
            p = reduce(p, modulus)
        elts.append(CobarElement.make(s, {0: p}))
    return ExtReport(s, t, modulus, tuple(factors), tuple(elts), K)


def class_identify(e: CobarElement, report: ExtReport):
    """Coordinates of [e] with respect to ``report.representatives``.

    Returns the string "not a cocycle" when d(e) != 0.
    """
    modulus = report.modulus
    pres = MooreQuotient(modulus)
    if e.s != report.s:
        raise ValueError("cohomological degree mismatch")
    if not is_cocycle(e, pres):
        return "not a cocycle"
    s, t = report.s, report.t
    basis = cobar_basis(s, t, modulus)
    index = _index(basis)
    p = reduce(e.cell(0), modulus) if modulus.power_of_two else e.cell(0)
    if modulus.power_of_two == 1:
        span = linalg.F2Span()
        nrep = len(report.representatives)
        for r in report.representatives:
            span.add(_as_bits(r.cell(0), index))
        image = _f2_columns(s - 1, t, modulus) if s > 0 else ()
        for col in image:
            span.add(col)
        res, combo = span.reduce(_as_bits(p, index))
        if res:
            raise ArithmeticError("cocycle outside the computed span; Ext computation incomplete")
        return tuple((combo >> k) & 1 for k in range(nrep))
    K = max(report.precision, (modulus.power_of_two or 0) + 1)
    cols = [_as_int_vector(r.cell(0), index) for r in report.representatives]
    if s > 0:
        rows, ncols = _integral_matrix(s - 1, t)
        cols += [[r[c] for r in rows] for c in range(ncols)]
    if modulus.power_of_two:
        cols += [[(1 << modulus.power_of_two) * int(i == j) for i in range(len(basis))]
                 for j in range(len(basis))]
    A = _transpose(cols, len(basis))
    x = linalg.solve_mod2k(A, len(cols), _as_int_vector(p, index), K)
    if x is None:
        raise ArithmeticError("cocycle outside the computed span; Ext computation incomplete")
    out = []
    for f, c in zip(report.invariant_factors, x):
        out.append(c % f if f else c)
    return tuple(out)


# -- mod 2 class comparisons and named classes ----------------------------------

def is_coboundary_mod2(p: Poly, t: int, modulus: ModulusSpec = MOD2) -> bool:
    """True iff p (in C^1(BP_*/I), degree t) lies in d(C^0)."""
    p = reduce(p, modulus)
    if not p:
        return True
    index = _index(cobar_basis(1, t, modulus))
    cols = _f2_columns(0, t, modulus)
    return linalg.f2_solve(cols, _as_bits(p, index)) is not None


def coboundary_preimage_mod2(p: Poly, t: int, modulus: ModulusSpec = MOD2) -> Optional[Poly]:
    """Some c in C^0 with d(c) = p mod I, or None."""
    p = reduce(p, modulus)
    basis0 = cobar_basis(0, t, modulus)
    if not p:
        return ZERO
    index = _index(cobar_basis(1, t, modulus))
    x = linalg.f2_solve(_f2_columns(0, t, modulus), _as_bits(p, index))
    return None if x is None else _from_bits(x, basis0)


def classes_equal_mod2(a: Poly, b: Poly, t: int, modulus: ModulusSpec = MOD2) -> bool:
    return is_coboundary_mod2(a - b, t, modulus)


NAMED_CLASSES = {
    "a1": Poly.parse("t1"),
    "b1": Poly.parse("t1^2 + v1*t1"),
    "x7": Poly.parse("v1*t2 + v2*t1 + v1*t1^3"),
    "x7+b22": Poly.parse("v1*t2 + v2*t1 + v1*t1^3 + t1^4 + v1^3*t1"),
    "b22": Poly.parse("t1^4 + v1^3*t1"),
}


def named_poly(name: str) -> Poly:
    """Cochain for a name like 'v1^3*x7' or 'a1'."""
    k, base = split_v1_prefix(name)
    return Poly.generator("v", 1, k) * NAMED_CLASSES[base] if k else NAMED_CLASSES[base]


def split_v1_prefix(name: str) -> Tuple[int, str]:
    if name.startswith("v1^") and "*" in name:
        head, base = name.split("*", 1)
        return int(head[3:]), base.strip("()")
    if name.startswith("v1*"):
        return 1, name[3:].strip("()")
    return 0, name.strip("()")


def format_named(k: int, base: str) -> str:
    b = f"({base})" if "+" in base else base
    if k == 0:
        return b
    return f"v1*{b}" if k == 1 else f"v1^{k}*{b}"


def identify_named(p: Poly, t: int) -> List[str]:
    """All dictionary names v1^k*X whose mod-2 class equals that of p (degree t)."""
    if is_coboundary_mod2(p, t):
        return ["0"]
    hits = []
    for base, q in NAMED_CLASSES.items():
        dq = q.internal_degree()
        if (t - dq) >= 0 and (t - dq) % 2 == 0:
            k = (t - dq) // 2
            cand = Poly.generator("v", 1, k) * q if k else q
            if classes_equal_mod2(p, cand, t):
                hits.append(format_named(k, base))
    return hits


# -- Greek letter representatives -------------------------------------------

def alpha_rep(i: int, j: int) -> CobarElement:
    """Integral cocycle d(v1^i + 2c) / 2^j representing alpha_{i/j}."""
    if i < 1 or j < 1:
        raise ValueError("need i, j >= 1")
    t = 2 * i
    basis0 = cobar_basis(0, t, INTEGRAL)
    index1 = _index(cobar_basis(1, t, INTEGRAL))
    y = _as_int_vector(_d_poly(0, Poly.generator("v", 1, i), MooreQuotient(INTEGRAL)), index1)
    if any(c % 2 for c in y):
        raise ArithmeticError("d(v1^i) is not even")
    rows, ncols = _integral_matrix(0, t)
    A = [list(r) for r in rows]
    if j == 1:
        c = [0] * ncols
    else:
        c = linalg.solve_mod2k(A, ncols, [-(x >> 1) for x in y], j - 1)
        if c is None:
            raise NotDivisible(f"no correction makes d(v1^{i} + 2c) divisible by 2^{j}")
    total = [a + 2 * b for a, b in zip(y, linalg.mat_vec(A, c))]
    if any(x % (1 << j) for x in total):
        raise NotDivisible(f"d(v1^{i} + 2c) is not divisible by 2^{j}")
    return CobarElement.make(1, {0: _from_int_vector([x >> j for x in total], cobar_basis(1, t, INTEGRAL))})


def alpha_correction(i: int, j: int) -> Poly:
    """The element v1^i + 2c used by :func:`alpha_rep`."""
    t = 2 * i
    basis0 = cobar_basis(0, t, INTEGRAL)
    index1 = _index(cobar_basis(1, t, INTEGRAL))
    y = _as_int_vector(_d_poly(0, Poly.generator("v", 1, i), MooreQuotient(INTEGRAL)), index1)
    rows, ncols = _integral_matrix(0, t)
    if j == 1:
        return Poly.generator("v", 1, i)
    c = linalg.solve_mod2k([list(r) for r in rows], ncols, [-(x >> 1) for x in y], j - 1)
    if c is None:
        raise NotDivisible(f"alpha_{i}/{j} does not exist")
    return Poly.generator("v", 1, i) + _from_int_vector(c, basis0).scale(2)


def _v1_exp(m: Monomial) -> int:
    return dict(m).get(gen("v", 1), 0)


def beta_tilde_rep(i: int, j: int) -> CobarElement:
    """Mod-2 cocycle d(v2^i + c) / v1^j with c in v1*BP_*/2 chosen by a linear solve."""
    if i < 1 or j < 1:
        raise ValueError("need i, j >= 1")
    t = 6 * i
    pres = MooreQuotient(MOD2)
    basis0 = [m for m in cobar_basis(0, t, MOD2) if _v1_exp(m) >= 1]
    basis1 = cobar_basis(1, t, MOD2)
    index1 = _index(basis1)
    low = 0
    for k, m in enumerate(basis1):
        if _v1_exp(m) < j:
            low |= 1 << k
    target = _as_bits(_d_poly(0, Poly.generator("v", 2, i), pres), index1)
    cols = [_as_bits(_d_poly(0, Poly.monomial(m), pres), index1) for m in basis0]
    x = linalg.f2_solve([c & low for c in cols], target & low)
    if x is None:
        raise NotDivisible(f"d(v2^{i} + c) is never divisible by v1^{j} mod 2")
    total = target
    for k, col in enumerate(cols):
        if x >> k & 1:
            total ^= col
    out = {}
    v1 = gen("v", 1)
    for k, m in enumerate(basis1):
        if total >> k & 1:
            d = dict(m)
            d[v1] -= j
            out[tuple(sorted((g, e) for g, e in d.items() if e))] = 1
    return CobarElement.make(1, {0: Poly(out)})


def ext_v1_generators(s: int, t: int, pres=MOD2) -> ExtReport:
    """Ext^{s,t}(BP_*/I) modulo v1 * Ext^{s,t-2}(BP_*/I), for I containing 2.

    These are the generators of Ext^s as a module over F2[v1] that live in
    internal degree t.
    """
    modulus = _modulus_of(pres)
    if modulus.power_of_two != 1:
        raise ValueError("module generators are computed for mod-2 quotients")
    basis = cobar_basis(s, t, modulus)
    index = _index(basis)
    span = linalg.F2Span()
    if s > 0:
        for col in _f2_columns(s - 1, t, modulus):
            span.add(col)
    if t >= 2:
        low_basis = cobar_basis(s, t - 2, modulus)
        v1 = Poly.generator("v", 1)
        for vec in linalg.f2_kernel(_f2_columns(s, t - 2, modulus)):
            prod = reduce(_from_bits(vec, low_basis) * v1, modulus)
            span.add(_as_bits(prod, index))
    reps = []
    for vec in linalg.f2_kernel(_f2_columns(s, t, modulus)):
        if span.add(vec):
            reps.append(CobarElement.make(s, {0: _from_bits(vec, basis)}))
    return ExtReport(s, t, modulus, tuple([2] * len(reps)), tuple(reps), 1)


def identify_generators(e: CobarElement, gens: ExtReport):
    """Coordinates of [e] in Ext^{s,t} / v1*Ext^{s,t-2} against ``gens``."""
    modulus = gens.modulus
    s, t = gens.s, gens.t
    if not is_cocycle(e, MooreQuotient(modulus)):
        return "not a cocycle"
    basis = cobar_basis(s, t, modulus)
    index = _index(basis)
    span = linalg.F2Span()
    for r in gens.representatives:
        span.add(_as_bits(r.cell(0), index))
    if s > 0:
        for col in _f2_columns(s - 1, t, modulus):
            span.add(col)
    if t >= 2:
        low_basis = cobar_basis(s, t - 2, modulus)
        v1 = Poly.generator("v", 1)
        for vec in linalg.f2_kernel(_f2_columns(s, t - 2, modulus)):
            span.add(_as_bits(reduce(_from_bits(vec, low_basis) * v1, modulus), index))
    res, combo = span.reduce(_as_bits(reduce(e.cell(0), modulus), index))
    if res:
        raise ArithmeticError("cocycle outside the computed span")
    return tuple((combo >> k) & 1 for k in range(len(gens.representatives)))
