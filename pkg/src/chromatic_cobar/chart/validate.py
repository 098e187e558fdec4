"""Bidegree bookkeeping for chart documents and root-invariant traces.

Every check is an integer identity; a failure is reported as a
:class:`Violation` naming the rule, never raised.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from ..aahss import greek_degree, greek_existence
from ..algebra.rational import nu2
from ..errors import ParseError
from .model import ChartDoc, FRITrace, SSClass, greek_indices, product_factors

INFINITY = "∞"


@dataclass(frozen=True)
class Violation:
    rule: str
    where: str
    message: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "where": self.where, "message": self.message}

    def __str__(self):
        return f"[{self.rule}] {self.where}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...]
    checked: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> List[str]:
        return sorted({v.rule for v in self.violations})

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "violations": [v.to_json() for v in self.violations]}

    def format_text(self) -> str:
        lines = [f"checked {self.checked} items, {len(self.violations)} violations"]
        lines += [str(v) for v in self.violations]
        return "\n".join(lines)


def alpha_order_log2(i: int) -> int:
    """log_2 of the order of Ext^{1,2i}(BP_*) at p = 2."""
    if i % 2:
        return 1
    if i == 2:
        return 2
    return nu2(i) + 2


def _bidegree(doc: ChartDoc, name: str) -> Optional[Tuple[int, int]]:
    c = doc.find(name)
    if c is not None:
        return c.stem, c.s
    g = greek_indices(name)
    if g is not None:
        return greek_degree(g[0], (g[1], g[2]))
    try:
        factors = product_factors(name)
    except ParseError:
        return None
    if factors is None:
        return None
    stem = s = 0
    for f, e in factors:
        d = _bidegree(doc, f)
        if d is None:
            return None
        stem += e * d[0]
        s += e * d[1]
    return stem, s


def operator_stem(doc: ChartDoc, entries: Iterable[str]) -> Optional[int]:
    """Stem of a product (one entry) or Toda bracket <e1, ..., en, -> of attaching maps."""
    entries = list(entries)
    total = len(entries) - 1
    for e in entries:
        if e == "2":
            continue
        d = _bidegree(doc, e)
        if d is None:
            return None
        total += d[0]
    return total


def _check_class(doc: ChartDoc, c: SSClass, out: List[Violation]):
    where = f"class {c.name}"
    if c.s < 0:
        out.append(Violation("filtration", where, f"negative filtration {c.s}"))
    if c.order is not None and c.order != INFINITY and not (c.order.isdigit() and int(c.order) > 0):
        out.append(Violation("order", where, f"order label {c.order!r} is not a positive integer or {INFINITY}"))
    g = greek_indices(c.name)
    if g is not None:
        letter, i, j = g
        want = greek_degree(letter, (i, j))
        if (c.stem, c.s) != want:
            out.append(Violation("greek-degree", where, f"placed at {(c.stem, c.s)}, degree formula gives {want}"))
        if letter == "a" and not greek_existence(i, j):
            out.append(Violation("greek-existence", where, f"alpha_{i}/{j} needs j <= nu_2(i) + 2"))
        if letter == "b" and not 1 <= j <= i:
            out.append(Violation("greek-existence", where, f"beta_{i}/{j} needs 1 <= j <= i"))
        if letter == "a" and j == 1 and c.order is not None and c.order.isdigit():
            want_order = alpha_order_log2(i)
            if int(c.order) != want_order:
                out.append(Violation("order", where, f"tower label {c.order}, Ext^(1,{2 * i}) has order 2^{want_order}"))
        return
    try:
        factors = product_factors(c.name)
    except ParseError as exc:
        out.append(Violation("name", where, str(exc)))
        return
    if factors is not None:
        stem = s = 0
        for f, e in factors:
            d = _bidegree(doc, f)
            if d is None:
                out.append(Violation("unknown-class", where, f"factor {f} is not in the chart"))
                return
            stem += e * d[0]
            s += e * d[1]
        if (c.stem, c.s) != (stem, s):
            out.append(Violation("product-degree", where, f"placed at {(c.stem, c.s)}, factors give {(stem, s)}"))


def chart_load_validate(doc: ChartDoc) -> ValidationReport:
    """Check names, Greek degrees, products, differentials, extensions and traces."""
    out: List[Violation] = []
    checked = 0
    seen = set()
    for c in doc.classes:
        checked += 1
        if c.name in seen:
            out.append(Violation("duplicate-name", f"class {c.name}", "name used twice"))
        seen.add(c.name)
        _check_class(doc, c, out)
    for n, d in enumerate(doc.differentials):
        checked += 1
        where = f"d_{d.r}({d.source}) = {d.target}"
        src, tgt = doc.find(d.source), doc.find(d.target)
        if src is None or tgt is None:
            missing = d.source if src is None else d.target
            out.append(Violation("unknown-class", where, f"{missing} is not in the chart"))
            continue
        if d.r < 2:
            out.append(Violation("page", where, f"ANSS differentials start on E_2, got r = {d.r}"))
        if tgt.stem != src.stem - 1:
            out.append(Violation("differential-stem", where, f"target stem {tgt.stem}, expected {src.stem - 1}"))
        if tgt.s != src.s + d.r:
            out.append(Violation("differential-filtration", where, f"target filtration {tgt.s}, expected {src.s + d.r}"))
    for e in doc.extensions:
        checked += 1
        out.extend(_check_extension(doc, e))
    for tr in doc.traces:
        checked += 1
        out.extend(froot_trace_check(tr, doc).violations)
    return ValidationReport(tuple(out), checked)


def _check_extension(doc: ChartDoc, e) -> List[Violation]:
    where = f"{e.kind} {e.source} -> {e.target}"
    src, tgt = doc.find(e.source), doc.find(e.target)
    if src is None or tgt is None:
        missing = e.source if src is None else e.target
        return [Violation("unknown-class", where, f"{missing} is not in the chart")]
    lhs, rhs = operator_stem(doc, e.left), operator_stem(doc, e.right)
    if lhs is None or rhs is None:
        return [Violation("unknown-class", where, "attaching data names an unknown class")]
    if src.stem + lhs != tgt.stem + rhs:
        return [Violation("extension-stem", where,
                          f"stem {src.stem} + {lhs} differs from {tgt.stem} + {rhs}")]
    return []


def froot_trace_check(trace: FRITrace, doc: ChartDoc) -> ValidationReport:
    """Filtration, stem, ordering and linking checks for one trace."""
    out: List[Violation] = []
    tag = f"trace {trace.element}"
    prev = None
    prev_cls = None
    for n, e in enumerate(trace.entries):
        where = f"{tag}[{n}] {e.name}"
        cls = doc.find(e.name)
        if cls is None:
            out.append(Violation("trace-class", where, "class is not in the chart"))
            prev, prev_cls = e, None
            continue
        if cls.s != e.k:
            out.append(Violation("trace-filtration", where, f"k = {e.k} but the class has filtration {cls.s}"))
        if cls.stem != trace.t - 1 + e.N:
            out.append(Violation("trace-stem", where, f"t - 1 + N = {trace.t - 1 + e.N}, class stem {cls.stem}"))
        if prev is not None:
            if e.k <= prev.k:
                out.append(Violation("trace-order", where, f"k does not increase ({prev.k} -> {e.k})"))
            if e.cell <= prev.cell:
                out.append(Violation("trace-order", where, f"cell -N does not increase ({prev.cell} -> {e.cell})"))
            if prev_cls is not None:
                out.extend(_check_link(doc, prev, e, where))
        elif e.link is not None:
            out.append(Violation("trace-link", where, "the first entry cannot carry a link"))
        prev, prev_cls = e, cls
    return ValidationReport(tuple(out), len(trace.entries))


def _check_link(doc: ChartDoc, prev, cur, where: str) -> List[Violation]:
    link = cur.link
    if not link:
        return [Violation("trace-link", where, "consecutive entries need a link")]
    kind = link.get("kind")
    if kind == "differential":
        via = link.get("via")
        vd = _bidegree(doc, via) if isinstance(via, str) else None
        if vd is None:
            return [Violation("trace-link", where, f"unknown attaching class {via!r}")]
        cd = doc.find(cur.name)
        want = (vd[0] + cd.stem, vd[1] + cd.s)
        cands = [d for d in doc.differentials if d.source == prev.name
                 and doc.find(d.target) is not None
                 and (doc.find(d.target).stem, doc.find(d.target).s) == want]
        if not cands:
            return [Violation("trace-link", where, f"no recorded differential from {prev.name} onto {via}*{cur.name}")]
        out = []
        r = cands[0].r
        if cur.k != prev.k + r - vd[1]:
            out.append(Violation("trace-link", where, f"d_{r} with {via} moves k to {prev.k + r - vd[1]}, not {cur.k}"))
        if cur.cell - prev.cell != vd[0] + 1:
            out.append(Violation("trace-link", where, f"{via} joins cells {vd[0] + 1} apart, not {cur.cell - prev.cell}"))
        return out
    if kind == "hidden":
        exts = [x for x in doc.extensions if x.source == prev.name and x.target == cur.name]
        if not exts:
            return [Violation("trace-link", where, f"no recorded hidden extension {prev.name} -> {cur.name}")]
        x = exts[0]
        out = []
        lhs, rhs = operator_stem(doc, x.left), operator_stem(doc, x.right)
        if lhs != prev.cell - x.bottom - 1:
            out.append(Violation("trace-link", where, f"cell {prev.cell} attaches to {x.bottom} in stem "
                                 f"{prev.cell - x.bottom - 1}, attaching data has stem {lhs}"))
        if rhs != cur.cell - x.bottom - 1:
            out.append(Violation("trace-link", where, f"cell {cur.cell} attaches to {x.bottom} in stem "
                                 f"{cur.cell - x.bottom - 1}, attaching data has stem {rhs}"))
        return out
    return [Violation("trace-link", where, f"unknown link kind {kind!r}")]
