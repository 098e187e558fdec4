"""Finitely presented BP_*BP-comodules: Moore quotients and projective windows.

Conventions.  An element of M (x) BP_*BP^{(x)s} is stored as a map
``cell -> Poly``; the v's in a polynomial are scalars sitting next to the
module generator, the t's (u's) belong to the first (second) tensor slot,
counting outward from M.  With this convention the coaction applies eta_R
to scalars, ``psi(p x^j) = eta_R(p) f(x)^j``, while relations among the
cells are applied with plain multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra.modulus import INTEGRAL, MOD2, ModulusSpec, reduce
from .algebra.poly import ONE, ZERO, Poly
from .algebra.series import TruncSeries
from .errors import TruncationExceeded, WindowExceeded, WindowUnderflow
from .fgl import apply_right_unit, fgl_data

Terms = Dict[int, Poly]


@dataclass(frozen=True)
class WindowSpec:
    """Cells x^a .. x^b of a projective window."""
    a: int
    b: int
    x_truncation: Optional[int] = None

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"empty window [{self.a}, {self.b}]")
        if self.x_truncation is None:
            object.__setattr__(self, "x_truncation", self.b - self.a + 2)
        if self.x_truncation < self.b - self.a + 2:
            raise ValueError("x_truncation must be at least b - a + 2")

    @property
    def width(self) -> int:
        return self.b - self.a + 1

    @classmethod
    def parse(cls, text: str, trunc: Optional[int] = None) -> "WindowSpec":
        lo, hi = text.split(":")
        return cls(int(lo), int(hi), trunc)


def _split_two(c) -> Tuple[int, object]:
    """c = r + 2q with r in {0, 1}; c must be 2-integral."""
    if isinstance(c, int):
        r = c & 1
        return r, (c - r) // 2
    if c.denominator % 2 == 0:
        from .errors import NonIntegral
        raise NonIntegral(f"coefficient {c} is not 2-integral")
    r = c.numerator & 1
    q = Fraction(c - r, 2)
    return r, (q.numerator if q.denominator == 1 else q)


def _split_poly(p: Poly) -> Tuple[Poly, Poly]:
    r_terms, q_terms = {}, {}
    for m, c in p.items():
        r, q = _split_two(c)
        if r:
            r_terms[m] = r
        if q:
            q_terms[m] = q
    return Poly(r_terms), Poly(q_terms)


def add_terms(*elts: Terms) -> Terms:
    out: Terms = {}
    for e in elts:
        for j, p in e.items():
            out[j] = out.get(j, ZERO) + p
    return {j: p for j, p in out.items() if p}


def scale_terms(e: Terms, c) -> Terms:
    if isinstance(c, Poly):
        out = {j: p * c for j, p in e.items()}
    else:
        out = {j: p.scale(c) for j, p in e.items()}
    return {j: p for j, p in out.items() if p}


def map_terms(e: Terms, fn) -> Terms:
    out = {j: fn(p) for j, p in e.items()}
    return {j: p for j, p in out.items() if p}


class Comodule:
    """Common interface; subclasses fix the cells and the relations."""

    kind = "comodule"
    modulus: ModulusSpec = INTEGRAL
    cells: Tuple[int, ...] = ()

    def cell_degree(self, j: int) -> int:
        raise NotImplementedError

    def cell_name(self, j: int) -> str:
        raise NotImplementedError

    def coaction(self, j: int) -> Terms:
        """psi of the generator at cell j, as cell -> coefficient in v's and t's."""
        raise NotImplementedError

    def normalize(self, e: Terms) -> Terms:
        raise NotImplementedError

    def relations(self) -> List[Terms]:
        return []

    def psi(self, e: Terms) -> Terms:
        """Coaction on a cobar-degree-0 element (scalars go through eta_R)."""
        out: Terms = {}
        for j, p in e.items():
            rp = apply_right_unit(p)
            for jj, g in self.coaction(j).items():
                out[jj] = out.get(jj, ZERO) + rp * g
        return self.normalize(out)

    def element_degree(self, e: Terms) -> Optional[int]:
        degs = set()
        for j, p in e.items():
            d = p.internal_degree()
            if not isinstance(d, int):
                return None
            degs.add(d + self.cell_degree(j))
        if len(degs) > 1:
            return None
        return degs.pop() if degs else None

    def format_terms(self, e: Terms) -> str:
        if not e:
            return "0"
        parts = []
        for j in sorted(e):
            parts.append(f"({e[j]})*{self.cell_name(j)}" if len(self.cells) > 1 else f"({e[j]})")
        return " + ".join(parts)


class MooreQuotient(Comodule):
    """BP_*/I with psi(1) = 1 (x) 1."""

    kind = "moore"

    def __init__(self, modulus: ModulusSpec = MOD2):
        self.modulus = modulus
        self.cells = (0,)

    def __repr__(self):
        return f"MooreQuotient({self.modulus.label()})"

    def cell_degree(self, j: int) -> int:
        return 0

    def cell_name(self, j: int) -> str:
        return "1"

    def coaction(self, j: int) -> Terms:
        if j != 0:
            raise WindowExceeded(f"Moore quotient has no cell {j}")
        return {0: ONE}

    def normalize(self, e: Terms) -> Terms:
        for j in e:
            if j != 0:
                raise WindowExceeded(f"Moore quotient has no cell {j}")
        p = reduce(e.get(0, ZERO), self.modulus)
        return {0: p} if p else {}


def moore_quotient(spec) -> MooreQuotient:
    if isinstance(spec, str):
        spec = ModulusSpec.parse(spec)
    return MooreQuotient(spec)


def _power_coeffs(g: TruncSeries, j: int, width: int) -> Tuple[Poly, ...]:
    gj = g ** j
    return tuple(gj.coefficient(k) for k in range(width))


class ProjectiveWindow(Comodule):
    """Cells x^a..x^b of BP^{-*}CP (stunted=False) or of BP^{-*}P_{2a-1}^{2b} (stunted=True).

    With ``homology=True`` the cell x^j is named e_{-2j-1} and sits in degree
    -2j-1; this is BP_* of the dual window (see :func:`homology_stunted`).
    """

    def __init__(self, window: WindowSpec, stunted: bool = True, homology: bool = False):
        self.window = window
        self.stunted = stunted
        self.homology = homology
        self.kind = "homology" if homology else ("stunted" if stunted else "cp")
        self.modulus = INTEGRAL
        self.cells = tuple(range(window.a, window.b + 1))
        self._fgl = fgl_data(max(window.x_truncation, 3))
        self._c = self._fgl.c

    def __repr__(self):
        w = self.window
        if self.homology:
            return f"homology_stunted({-w.b}, {-w.a})"
        return f"{'dual_stunted' if self.stunted else 'dual_cp'}({w.a}:{w.b})"

    @property
    def a(self) -> int:
        return self.window.a

    @property
    def b(self) -> int:
        return self.window.b

    def c(self, k: int) -> Poly:
        if k >= len(self._c):
            raise TruncationExceeded(f"c_{k} beyond the stored two-series")
        return self._c[k]

    def cell_degree(self, j: int) -> int:
        return -2 * j - 1 if self.homology else -2 * j

    def cell_name(self, j: int) -> str:
        if self.homology:
            return f"e{-2 * j - 1}"
        return f"x^{j}" if j >= 0 else f"x^({j})"

    def _check(self, j: int):
        if j < self.a:
            raise WindowExceeded(f"cell {j} below the window [{self.a}, {self.b}]")

    def coaction(self, j: int) -> Terms:
        self._check(j)
        if j > self.b:
            return {}
        width = self.b - j + 1
        g = _power_coeffs_cached(j, width)
        return {j + k: gk for k, gk in enumerate(g) if gk}

    def normalize(self, e: Terms) -> Terms:
        """Canonical form: every cell coefficient has coefficients in {0, 1}.

        Uses 2x^j = -sum_{k>=1} c_k x^{j+k}; cells above b are zero.
        """
        for j in e:
            self._check(j)
        work = {j: p for j, p in e.items() if j <= self.b and p}
        if not self.stunted:
            return work
        out: Terms = {}
        for j in self.cells:
            p = work.pop(j, None)
            if not p:
                continue
            r, q = _split_poly(p)
            if r:
                out[j] = r
            if q:
                for k in range(1, self.b - j + 1):
                    ck = self.c(k)
                    if ck:
                        work[j + k] = work.get(j + k, ZERO) - q * ck
        return out

    def relation(self, j: int) -> Terms:
        """[2]_F(x)/x * x^j restricted to the window."""
        self._check(j)
        return {j + k: self.c(k) for k in range(0, self.b - j + 1) if self.c(k)}

    def relations(self) -> List[Terms]:
        return [self.relation(j) for j in self.cells] if self.stunted else []

    def relation_matrix(self) -> List[List[Poly]]:
        """Row r = relation at the r-th generator, in the order the generators are listed."""
        gens = self.generator_cells()
        rows = []
        for j in gens:
            rel = self.relation(j)
            rows.append([rel.get(jj, ZERO) for jj in gens])
        return rows

    def generator_cells(self) -> List[int]:
        """Cells in the listing order: ascending x-power, or ascending m for e_{2m-1}."""
        return sorted(self.cells, reverse=self.homology)


@lru_cache(maxsize=None)
def _power_coeffs_cached(j: int, width: int) -> Tuple[Poly, ...]:
    fgl = fgl_data(max(width + 1, 3))
    f = fgl.iso_f
    g = TruncSeries(f.coefficients[1:], f.order - 1).truncate(width)
    return _power_coeffs(g, j, width)


def dual_cp(window: WindowSpec) -> ProjectiveWindow:
    return ProjectiveWindow(window, stunted=False)


def dual_stunted(window: WindowSpec, fgl=None) -> ProjectiveWindow:
    return ProjectiveWindow(window, stunted=True)


def homology_stunted(l: int, k: int, fgl=None) -> ProjectiveWindow:
    """BP_* P^{2k}_{2l-1}: generators e_{2m-1}, l <= m <= k.

    e_{2m-1} is modelled by the cell x^{-m} of the dual window.
    """
    if l > k:
        raise ValueError("need l <= k")
    return ProjectiveWindow(WindowSpec(-k, -l), stunted=True, homology=True)


def e_cell(m: int) -> int:
    """Cell index carrying e_{2m-1}."""
    return -m


def v1_tilde(e: Terms, source: ProjectiveWindow, target: Optional[ProjectiveWindow] = None) -> Terms:
    """v~1(e_{2m-1}) = -sum_{i>=1} c_i e_{2(m-i)-1}, as an element of ``target``.

    ``target`` defaults to the window shifted down by one cell
    (BP_*P^{2k}_{2l-1} -> BP_*P^{2(k-1)}_{2l-3}).  Components whose leading
    image v1*e_{2(m-1)-1} falls below the target raise WindowUnderflow.
    """
    if not source.homology:
        raise ValueError("v1_tilde acts on homology_stunted presentations")
    if target is None:
        target = ProjectiveWindow(WindowSpec(source.a + 1, source.b + 1), homology=True)
    c = fgl_data(max(target.b - source.a + 2, 3)).c
    out: Terms = {}
    for j, p in e.items():
        if j + 1 > target.b:
            raise WindowUnderflow(f"v~1 of {source.cell_name(j)} leaves the window")
        for i in range(1, target.b - j + 1):
            ci = c[i]
            if ci and j + i >= target.a:
                out[j + i] = out.get(j + i, ZERO) - p * ci
    return target.normalize(out)
