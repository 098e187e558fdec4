"""Chart documents: classes, differentials, hidden extensions and root-invariant traces.

Documents are plain JSON.  Class names use an ASCII Greek shorthand:
``a4/3`` is alpha_{4/3}, ``b6/2`` is beta_{6/2}, ``eta3/2`` is eta_{3/2},
``Pb2/2`` is Pi beta_{2/2}.  Products are written ``a1^3*a5`` and a
quotient of a product by an integer as ``(b4*a1^3)/8``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..errors import ParseError

DATA_DIR = Path(__file__).parent / "data"
FIG1_PATH = DATA_DIR / "fig1.json"


@dataclass(frozen=True)
class SSClass:
    name: str
    stem: int
    s: int
    order: Optional[str] = None
    provenance: str = "figure"

    def to_json(self) -> dict:
        out = {"name": self.name, "stem": self.stem, "s": self.s}
        if self.order is not None:
            out["order"] = self.order
        if self.provenance != "figure":
            out["provenance"] = self.provenance
        return out


@dataclass(frozen=True)
class ChartDifferential:
    r: int
    source: str
    target: str

    def to_json(self) -> dict:
        return {"r": self.r, "from": self.source, "to": self.target}


@dataclass(frozen=True)
class HiddenExtension:
    """<left>(source) = <right>(target), through the cells of a window with bottom cell M.

    ``left`` and ``right`` are the attaching data: a list of classes (or "2")
    forming a product when it has one entry and a Toda bracket otherwise.
    """
    source: str
    target: str
    bottom: int
    left: Tuple[str, ...]
    right: Tuple[str, ...]
    kind: str = "hidden"

    def to_json(self) -> dict:
        return {"kind": self.kind, "from": self.source, "to": self.target, "M": self.bottom,
                "left": list(self.left), "right": list(self.right)}


@dataclass(frozen=True)
class TraceEntry:
    k: int
    cell: int
    name: str
    link: Optional[dict] = None

    @property
    def N(self) -> int:
        return -self.cell

    def to_json(self) -> dict:
        out = {"k": self.k, "cell": self.cell, "class": self.name}
        if self.link is not None:
            out["link"] = dict(self.link)
        return out


@dataclass(frozen=True)
class FRITrace:
    """Filtered root invariants of an element in stem t, carried by the cells -N_i."""
    element: str
    t: int
    entries: Tuple[TraceEntry, ...]

    def to_json(self) -> dict:
        return {"element": self.element, "t": self.t, "entries": [e.to_json() for e in self.entries]}


@dataclass(frozen=True)
class ChartDoc:
    classes: Tuple[SSClass, ...] = ()
    differentials: Tuple[ChartDifferential, ...] = ()
    extensions: Tuple[HiddenExtension, ...] = ()
    traces: Tuple[FRITrace, ...] = ()
    title: str = ""
    _index: Dict[str, SSClass] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for c in self.classes:
            self._index.setdefault(c.name, c)

    def find(self, name: str) -> Optional[SSClass]:
        return self._index.get(name)

    def trace(self, element: str) -> FRITrace:
        for tr in self.traces:
            if tr.element == element:
                return tr
        raise KeyError(element)

    def to_json(self) -> dict:
        out = {}
        if self.title:
            out["title"] = self.title
        out["classes"] = [c.to_json() for c in self.classes]
        out["differentials"] = [d.to_json() for d in self.differentials]
        out["extensions"] = [e.to_json() for e in self.extensions]
        out["traces"] = [t.to_json() for t in self.traces]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False) + "\n"


def _req(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ParseError(f"{where}: field {key!r} must be an integer")
    if kind is str and not isinstance(val, str):
        raise ParseError(f"{where}: field {key!r} must be a string")
    return val


def _strs(obj: dict, key: str, where: str) -> Tuple[str, ...]:
    val = obj.get(key)
    if not isinstance(val, list) or not val or not all(isinstance(x, str) for x in val):
        raise ParseError(f"{where}: field {key!r} must be a non-empty list of strings")
    return tuple(val)


def chart_from_json(data) -> ChartDoc:
    if not isinstance(data, dict):
        raise ParseError("chart document must be a JSON object")
    classes = []
    for n, c in enumerate(data.get("classes", [])):
        where = f"classes[{n}]"
        order = c.get("order")
        if order is not None and not isinstance(order, str):
            raise ParseError(f"{where}: order must be a string")
        classes.append(SSClass(_req(c, "name", str, where), _req(c, "stem", int, where),
                               _req(c, "s", int, where), order, c.get("provenance", "figure")))
    diffs = []
    for n, d in enumerate(data.get("differentials", [])):
        where = f"differentials[{n}]"
        diffs.append(ChartDifferential(_req(d, "r", int, where), _req(d, "from", str, where),
                                       _req(d, "to", str, where)))
    exts = []
    for n, e in enumerate(data.get("extensions", [])):
        where = f"extensions[{n}]"
        exts.append(HiddenExtension(_req(e, "from", str, where), _req(e, "to", str, where),
                                    _req(e, "M", int, where), _strs(e, "left", where),
                                    _strs(e, "right", where), e.get("kind", "hidden")))
    traces = []
    for n, t in enumerate(data.get("traces", [])):
        where = f"traces[{n}]"
        entries = []
        raw = t.get("entries")
        if not isinstance(raw, list) or not raw:
            raise ParseError(f"{where}: entries must be a non-empty list")
        for m, e in enumerate(raw):
            w2 = f"{where}.entries[{m}]"
            link = e.get("link")
            if link is not None and not isinstance(link, dict):
                raise ParseError(f"{w2}: link must be an object")
            entries.append(TraceEntry(_req(e, "k", int, w2), _req(e, "cell", int, w2),
                                      _req(e, "class", str, w2), link))
        traces.append(FRITrace(_req(t, "element", str, where), _req(t, "t", int, where), tuple(entries)))
    return ChartDoc(tuple(classes), tuple(diffs), tuple(exts), tuple(traces), data.get("title", ""))


def chart_loads(text: str) -> ChartDoc:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return chart_from_json(data)


def chart_load(path) -> ChartDoc:
    return chart_loads(Path(path).read_text())


def fig1() -> ChartDoc:
    """The shipped Adams-Novikov chart at p = 2 with its root-invariant traces."""
    return chart_load(FIG1_PATH)


# -- names -----------------------------------------------------------------------

_GREEK = re.compile(r"^(a|b)(\d+)(?:/(\d+))?$")
_QUOT = re.compile(r"^\((.*)\)/(\d+)$")
_FACTOR = re.compile(r"^(.+?)(?:\^(\d+))?$")


def greek_indices(name: str) -> Optional[Tuple[str, int, int]]:
    """('a'|'b', i, j) for a Greek letter name, else None."""
    m = _GREEK.match(name)
    if not m:
        return None
    return m.group(1), int(m.group(2)), int(m.group(3) or 1)


def product_factors(name: str) -> Optional[List[Tuple[str, int]]]:
    """[(factor, exponent), ...] for a product name, or None for an atomic name."""
    q = _QUOT.match(name)
    body = q.group(1) if q else name
    if "*" not in body and "^" not in body:
        return None
    out = []
    for part in body.split("*"):
        m = _FACTOR.match(part)
        if not m or not m.group(1):
            raise ParseError(f"bad factor {part!r} in {name!r}")
        out.append((m.group(1), int(m.group(2) or 1)))
    return out
