"""Modified algebraic Atiyah-Hirzebruch spectral sequence for BP_*P^infty.

A class v1^i[2m-1] is modelled in the dual window by v1^i x^{-m}.  Its
differential is found by lifting, applying the cobar differential, and
killing the lowest surviving cell by mod-2 coboundaries until the leading
term is essential.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .algebra.modulus import MOD2, reduce
from .algebra.poly import ZERO, Poly
from .algebra.rational import nu2
from .cobar import (CobarElement, cobar_d, coboundary_preimage_mod2, format_named,
                    identify_named, is_coboundary_mod2, named_poly, split_v1_prefix)
from .comodule import ProjectiveWindow, WindowSpec
from .errors import Mismatch, OutOfTable, Unidentified, VanishingProduct

EXTRA_CELLS = 2


@dataclass(frozen=True)
class AAHSSClass:
    i: int
    m: int

    @property
    def name(self) -> str:
        return f"{_v1_word(self.i)}[{2 * self.m - 1}]"

    @property
    def cell(self) -> int:
        return -self.m

    def internal_degree(self) -> int:
        """Degree of v1^i x^{-m} in the dual window."""
        return 2 * self.i + 2 * self.m


def _v1_word(i: int) -> str:
    return "1" if i == 0 else ("v1" if i == 1 else f"v1^{i}")


@dataclass(frozen=True)
class DifferentialRecord:
    i: int
    m: int
    r: Optional[int]
    names: Tuple[str, ...]
    nu2: int
    leading: Poly = field(default=ZERO, compare=False)
    lift: Tuple[Tuple[int, Poly], ...] = field(default=(), compare=False)

    @property
    def source(self) -> str:
        return AAHSSClass(self.i, self.m).name

    @property
    def target_cell(self) -> Optional[int]:
        return None if self.r is None else 2 * (self.m - self.r) - 1

    @property
    def target(self) -> str:
        if self.r is None:
            return "none"
        return f"{self.names[0]}[{self.target_cell}]"

    def to_json(self) -> dict:
        return {"r": self.r, "source": self.source, "target": self.target,
                "names": list(self.names), "nu2": self.nu2}

    def format_text(self) -> str:
        if self.r is None:
            return f"{self.source}: no differential within the window"
        alt = f"  (also {', '.join(self.names[1:])})" if len(self.names) > 1 else ""
        return f"d_{self.r}({self.source}) = {self.target}{alt}"


def _nu(n: int) -> int:
    v = nu2(n)
    return v if isinstance(v, int) else -1


def james_normalize(m: int, depth: int) -> Tuple[int, WindowSpec]:
    """Representative m' = m mod 2^depth in [-2^depth, -1] and its dual window."""
    mod = 2 ** depth
    mp = -(((-m - 1) % mod) + 1)
    cells = depth + EXTRA_CELLS
    return mp, WindowSpec(-mp, -mp + cells - 1)


def _depth_for(i: int, m: int) -> int:
    v = _nu(m + i)
    return (v if v >= 0 else 0) + 6


def aahss_differential(i: int, m: int, normalize: bool = True, depth: Optional[int] = None) -> DifferentialRecord:
    """d_r(v1^i[2m-1]) in the modified AAHSS, with r and the named target."""
    if i < 0:
        raise ValueError("i must be >= 0")
    if m + i == 0:
        return DifferentialRecord(i, m, None, (), -1)
    v = _nu(m + i)
    if depth is None:
        depth = _depth_for(i, m)
    if normalize:
        mp, window = james_normalize(m, depth)
    else:
        mp = m
        window = WindowSpec(-m, -m + v + 3 + EXTRA_CELLS)
    rec = _differential_at(i, mp, window.a, window.b)
    return DifferentialRecord(i, m, rec[0], rec[1], v, rec[2], rec[3])


@lru_cache(maxsize=None)
def _differential_at(i: int, m: int, a: int, b: int):
    pres = ProjectiveWindow(WindowSpec(a, b))
    j0 = -m
    lift: Dict[int, Poly] = {j0: Poly.generator("v", 1, i) if i else Poly.const(1)}
    src_deg = 2 * i - 2 * j0
    while True:
        z = cobar_d(CobarElement.make(0, lift), pres)
        if not z:
            return None, (), ZERO, tuple(sorted(lift.items()))
        j1 = z.lowest_cell()
        lead = reduce(z.cell(j1), MOD2)
        t_lead = src_deg + 2 * j1
        if not lead:
            raise ArithmeticError("normal form left an even leading coefficient")
        c = coboundary_preimage_mod2(lead, t_lead)
        if c is None:
            names = identify_named(lead, t_lead)
            if not names:
                raise Unidentified(f"d(v1^{i} x^{j0}) has leading term {lead} at cell {j1}")
            return j1 - j0, tuple(names), lead, tuple(sorted(lift.items()))
        lift[j1] = lift.get(j1, ZERO) - c


# -- the stated differentials as data ------------------------------------------

def expected_differential(i: int, m: int) -> Tuple[Optional[int], Optional[str]]:
    """The page and target name stated for v1^i[2m-1], as closed formulas in nu_2(m+i)."""
    if m + i == 0:
        return None, None
    k = _nu(m + i)
    if i == 0:
        if k == 0:
            return 1, "a1"
        if k == 1:
            return 2, "b1"
        if k in (2, 3):
            return k + 2, format_named(k - 2, "x7+b22")
        return k + 2, format_named(k - 2, "x7")
    if k == 0:
        return 1, format_named(i, "a1")
    if k == 1:
        return 3, format_named(i - 1, "x7")
    if k == 2:
        return 4, format_named(i, "x7+b22")
    return k + 2, format_named(k + i - 2, "x7")


def matches_expected(rec: DifferentialRecord) -> bool:
    r, name = expected_differential(rec.i, rec.m)
    return rec.r == r and (name is None or name in rec.names)


# -- v1 propagation ------------------------------------------------------------

def _v1_times(name: str) -> str:
    k, base = split_v1_prefix(name)
    return format_named(k + 1, base)


def v1_propagate(rec: DifferentialRecord) -> DifferentialRecord:
    """Propagate d_r(x[2m-1]) = y[...] to d_r(v1 x[2(m-1)-1]) = v1 y[...] and recompute."""
    if rec.r is None:
        raise ValueError("nothing to propagate")
    target = _v1_times(rec.names[0])
    recomputed = aahss_differential(rec.i + 1, rec.m - 1)
    degree = 2 * (rec.i + 1) + 2 * rec.r
    if is_coboundary_mod2(named_poly(target), degree):
        raise VanishingProduct(f"{target} is zero in Ext(BP_*/(2)); "
                               f"recomputed {recomputed.format_text()}", record=recomputed)
    if recomputed.r != rec.r or target not in recomputed.names:
        raise Mismatch(f"propagated d_{rec.r} -> {target} but recomputed {recomputed.format_text()}")
    return recomputed


# -- Greek letter bookkeeping ------------------------------------------------------

def greek_existence(i: int, j: int) -> bool:
    """The necessary condition j <= nu_2(i) + 2 for alpha_{i/j}."""
    return i >= 1 and 1 <= j <= _nu(i) + 2


def greek_degree(letter: str, indices: Tuple[int, int]) -> Tuple[int, int]:
    """(stem, filtration) of alpha_{i/j} or beta_{i/j}."""
    i, j = indices
    if letter in ("a", "alpha"):
        return 2 * i - 1, 1
    if letter in ("b", "beta"):
        return 6 * i - 2 * j - 2, 2
    raise ValueError(f"unknown Greek letter {letter!r}")


def greek_internal_degree(letter: str, indices: Tuple[int, int]) -> Tuple[int, int]:
    """(s, t) of the Ext class."""
    i, j = indices
    if letter in ("a", "alpha"):
        return 1, 2 * i
    if letter in ("b", "beta"):
        return 2, 6 * i - 2 * j + 2
    raise ValueError(f"unknown Greek letter {letter!r}")


# -- indeterminacy ------------------------------------------------------------------

@dataclass(frozen=True)
class IndetRow:
    a: int
    nu2: int
    generator: str
    condition: str = ""

    def to_json(self) -> dict:
        return {"a": self.a, "nu2": self.nu2, "generator": self.generator, "condition": self.condition}


def table_row(a: int, v: int) -> IndetRow:
    """The reference row for a = 3i - j and nu = nu_2(i)."""
    if a < 2:
        raise OutOfTable(f"a = {a} is below the table")
    if a == 2:
        rows = [(v >= 2, "-", "nu>=2"), (v == 1, "b1", "nu=1"), (v == 0, "v1*a1", "nu=0")]
    elif a == 3:
        rows = [(v >= 1, "-", "nu>=1"), (v == 0, "v1^2*a1", "nu=0")]
    elif a == 4:
        rows = [(v >= 3, "-", "nu>=3"), (v == 2, "(x7+b22)", "nu=2"), (v == 1, "x7", "nu=1"),
                (v == 0, "v1^3*a1", "nu=0")]
    elif a == 5:
        rows = [(v >= 4, "-", "nu>=4"), (2 <= v <= 3, "v1*(x7+b22)", "2<=nu<=3"),
                (v == 1, "v1*x7", "nu=1"), (v == 0, "v1^4*a1", "nu=0")]
    else:
        rows = [(v >= a - 1, "-", f"nu>={a - 1}"), (1 <= v <= a - 2, format_named(a - 4, "x7"), f"1<=nu<={a - 2}"),
                (v == 0, format_named(a - 1, "a1"), "nu=0")]
    for ok, g, cond in rows:
        if ok:
            return IndetRow(a, v, g, cond)
    raise OutOfTable(f"no row for a = {a}, nu = {v}")


def indeterminacy_table(i: int, j: int) -> IndetRow:
    return table_row(3 * i - j, _nu(i))


def recompute_row(a: int, v: int, offset: int = None) -> Tuple[IndetRow, List[DifferentialRecord]]:
    """Derive the generator from truncated AAHSS differentials.

    The candidates are the differentials on v1^{i'}[2m-1] with nu_2(m+i') = nu
    whose target sits in internal degree 2a (i' + r = a).
    """
    if a < 2:
        raise OutOfTable(f"a = {a} is below the table")
    if offset is None:
        offset = 2 ** (v + 1) + 2 ** v
    used = []
    hits = []
    for ip in range(0, a):
        m = -offset - ip
        rec = aahss_differential(ip, m)
        used.append(rec)
        if rec.r is not None and ip + rec.r == a:
            hits.append(rec)
    if not hits:
        return IndetRow(a, v, "-"), used
    return IndetRow(a, v, hits[0].names[0]), used


def indeterminacy_recompute(i: int, j: int) -> IndetRow:
    """Recompute the row for alpha_{i/j} and compare with the reference table."""
    a = 3 * i - j
    v = _nu(i)
    expected = table_row(a, v)
    row, used = recompute_row(a, v)
    hit = next((rec for rec in used if rec.r is not None and rec.i + rec.r == a), None)
    if expected.generator == "-":
        ok = hit is None
    else:
        ok = hit is not None and _same_name(expected.generator, hit.names)
    if not ok:
        raise Mismatch(f"A_{i}/{j}: table says {expected.generator}, engine gives {row.generator}")
    return IndetRow(a, v, expected.generator, expected.condition)


def _same_name(name: str, names) -> bool:
    k, base = split_v1_prefix(name)
    return format_named(k, base) in names
