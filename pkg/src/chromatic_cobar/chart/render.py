"""Deterministic SVG rendering of chart documents."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Tuple
from xml.sax.saxutils import escape

from .model import ChartDoc, product_factors


@dataclass(frozen=True)
class RenderOptions:
    stem_px: int = 30
    s_px: int = 40
    margin: int = 40
    min_stems: int = 10
    min_s: int = 4
    labels: bool = True


_LETTERS = (("eta", "η"), ("Pb", "Πβ"), ("a", "α"), ("b", "β"))


def display_name(name: str) -> str:
    """a4/3 -> α4/3, Pb2/2 -> Πβ2/2."""
    for ascii_, greek in _LETTERS:
        if name.startswith(ascii_) and re.match(r"^\d", name[len(ascii_):]):
            return greek + name[len(ascii_):]
    return name


def _fmt(x: float) -> str:
    return f"{x:.1f}"


def chart_render_svg(doc: ChartDoc, options: RenderOptions = RenderOptions()) -> str:
    o = options
    max_stem = max([o.min_stems] + [c.stem for c in doc.classes])
    max_s = max([o.min_s] + [c.s for c in doc.classes])
    width = 2 * o.margin + max_stem * o.stem_px
    height = 2 * o.margin + max_s * o.s_px

    # classes sharing a bidegree are spread horizontally in document order
    slots: Dict[Tuple[int, int], List[str]] = {}
    for c in doc.classes:
        slots.setdefault((c.stem, c.s), []).append(c.name)
    pos: Dict[str, Tuple[float, float]] = {}
    for (stem, s), names in slots.items():
        for n, name in enumerate(names):
            dx = (n - (len(names) - 1) / 2) * 6
            pos.setdefault(name, (o.margin + stem * o.stem_px + dx, height - o.margin - s * o.s_px))

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="serif" font-size="10">']
    out.append('<defs><marker id="arrow" viewBox="0 0 6 6" refX="6" refY="3" markerWidth="6" '
               'markerHeight="6" orient="auto"><path d="M0,0 L6,3 L0,6 z"/></marker></defs>')
    if doc.title:
        out.append(f'<title>{escape(doc.title)}</title>')
    x0, y0 = o.margin, height - o.margin
    out.append(f'<g stroke="#ccc" stroke-width="0.5">')
    for n in range(max_stem + 1):
        x = o.margin + n * o.stem_px
        out.append(f'<line x1="{x}" y1="{o.margin}" x2="{x}" y2="{y0}"/>')
    for s in range(max_s + 1):
        y = y0 - s * o.s_px
        out.append(f'<line x1="{x0}" y1="{y}" x2="{width - o.margin}" y2="{y}"/>')
    out.append('</g>')
    out.append('<g text-anchor="middle">')
    for n in range(0, max_stem + 1, 2):
        out.append(f'<text x="{o.margin + n * o.stem_px}" y="{y0 + 16}">{n}</text>')
    out.append('</g>')
    out.append('<g text-anchor="end">')
    for s in range(max_s + 1):
        out.append(f'<text x="{x0 - 8}" y="{y0 - s * o.s_px + 4}">{s}</text>')
    out.append('</g>')

    out.append('<g stroke="black" stroke-width="1" fill="none">')
    for d in doc.differentials:
        if d.source in pos and d.target in pos:
            (xa, ya), (xb, yb) = pos[d.source], pos[d.target]
            out.append(f'<line x1="{_fmt(xa)}" y1="{_fmt(ya)}" x2="{_fmt(xb)}" y2="{_fmt(yb)}" '
                       f'marker-end="url(#arrow)"><title>d_{d.r}</title></line>')
    for e in doc.extensions:
        if e.source in pos and e.target in pos:
            (xa, ya), (xb, yb) = pos[e.source], pos[e.target]
            out.append(f'<line x1="{_fmt(xa)}" y1="{_fmt(ya)}" x2="{_fmt(xb)}" y2="{_fmt(yb)}" '
                       f'stroke-dasharray="3,2"/>')
    out.append('</g>')

    out.append('<g>')
    for c in doc.classes:
        x, y = pos[c.name]
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5"><title>{escape(c.name)}</title></circle>')
    out.append('</g>')
    if o.labels:
        out.append('<g font-size="8">')
        for c in doc.classes:
            x, y = pos[c.name]
            if product_factors(c.name) is None and c.name != "1":
                out.append(f'<text x="{_fmt(x + 4)}" y="{_fmt(y - 4)}">{escape(display_name(c.name))}</text>')
            if c.order is not None:
                out.append(f'<text x="{_fmt(x - 4)}" y="{_fmt(y + 12)}" font-style="italic" '
                           f'text-anchor="end">{escape(c.order)}</text>')
        out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
