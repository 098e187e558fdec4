"""Command-line entry point.

Exit codes: 0 success, 1 computation error (or failed check), 2 usage error.
Results go to stdout (or --out); diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from . import __version__
from .aahss import (aahss_differential, greek_degree, greek_existence, indeterminacy_recompute,
                    indeterminacy_table, james_normalize, matches_expected, v1_propagate)
from .algebra.modulus import ModulusSpec
from .algebra.poly import Poly
from .algebra.series import TruncSeries
from .chart import chart_load, chart_load_validate, chart_render_svg, froot_trace_check
from .cobar import (CobarElement, alpha_rep, beta_tilde_rep, class_identify, cobar_d, ext_bidegree,
                    is_cocycle)
from .comodule import (WindowSpec, dual_cp, dual_stunted, homology_stunted, moore_quotient, v1_tilde)
from .errors import ChromaticCobarError, ParseError, VanishingProduct
from .fgl import build_fgl, coproduct, counit, formal_sum, hazewinkel_log, right_unit, universal_iso


class UsageError(Exception):
    pass


class Result:
    """A command result: JSON payload, text rendering and exit status."""

    def __init__(self, data, text: str, status: int = 0):
        self.data = data
        self.text = text if text.endswith("\n") else text + "\n"
        self.status = status

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"
        return self.text


def _series_json(s: TruncSeries) -> dict:
    return {"order": s.order, "coefficients": [str(s.coefficient(i)) for i in range(s.order)]}


def _series_text(name: str, s: TruncSeries) -> str:
    return f"{name} = {s}"


def _modulus(args) -> ModulusSpec:
    try:
        return ModulusSpec.parse(args.mod)
    except ParseError as exc:
        raise UsageError(str(exc)) from exc


def _window(text: str, trunc=None) -> WindowSpec:
    try:
        return WindowSpec.parse(text, trunc)
    except ValueError as exc:
        raise UsageError(f"bad window {text!r}: {exc}") from exc


def _poly(text: str) -> Poly:
    try:
        return Poly.parse(text)
    except ParseError as exc:
        raise UsageError(str(exc)) from exc


def _presentation(args):
    if getattr(args, "homology", None):
        lo, hi = (int(x) for x in args.homology.split(":"))
        return homology_stunted(lo, hi)
    if getattr(args, "window", None):
        w = _window(args.window, args.trunc)
        return dual_cp(w) if getattr(args, "cp", False) else dual_stunted(w)
    return moore_quotient(_modulus(args))


# -- fgl -------------------------------------------------------------------------

def cmd_fgl_two_series(args) -> Result:
    fgl = build_fgl(2, args.order)
    cs = [str(c) for c in fgl.c]
    text = "\n".join(f"c_{i} = {c}" for i, c in enumerate(cs))
    return Result({"order": args.order, "c": cs}, text)


def cmd_fgl_iso(args) -> Result:
    f, finv = universal_iso(build_fgl(2, args.order))
    return Result({"order": args.order, "f": _series_json(f), "f_inv": _series_json(finv)},
                  _series_text("f(x)", f) + "\n" + _series_text("f^-1(x)", finv))


def cmd_fgl_eta_r(args) -> Result:
    p = right_unit(args.n)
    return Result({"n": args.n, "eta_R": str(p)}, f"eta_R(v{args.n}) = {p}")


def cmd_fgl_log(args) -> Result:
    log = hazewinkel_log(2, args.n)
    return Result({"n": args.n, "log": _series_json(log)}, _series_text("log(x)", log))


def cmd_fgl_formal_sum(args) -> Result:
    fgl = build_fgl(2, args.order)
    s = formal_sum([TruncSeries.x(args.order)] * args.count, fgl)
    return Result({"count": args.count, "series": _series_json(s)}, _series_text(f"[{args.count}]_F(x)", s))


def cmd_fgl_coproduct(args) -> Result:
    p = coproduct(args.n)
    return Result({"n": args.n, "coproduct": str(p)}, f"Delta(t{args.n}) = {p}")


def cmd_fgl_counit(args) -> Result:
    p = counit(_poly(args.poly))
    return Result({"counit": str(p)}, str(p))


# -- comodule ----------------------------------------------------------------------

def cmd_comodule_coaction(args) -> Result:
    pres = _presentation(args)
    cell = args.cell if args.cell is not None else pres.cells[0]
    e = pres.psi({cell: Poly.const(1)})
    terms = [{"cell": j, "name": pres.cell_name(j), "coefficient": str(p)} for j, p in sorted(e.items())]
    return Result({"presentation": repr(pres), "cell": cell, "psi": terms},
                  f"psi({pres.cell_name(cell)}) = {pres.format_terms(e)}")


def cmd_comodule_v1_tilde(args) -> Result:
    lo, hi = (int(x) for x in args.homology.split(":"))
    src = homology_stunted(lo, hi)
    e = v1_tilde({-args.m: Poly.const(1)}, src)
    tgt = homology_stunted(lo - 1, hi - 1)
    terms = [{"cell": j, "name": tgt.cell_name(j), "coefficient": str(p)} for j, p in sorted(e.items())]
    return Result({"m": args.m, "image": terms}, f"v~1(e{2 * args.m - 1}) = {tgt.format_terms(e)}")


# -- cobar -------------------------------------------------------------------------

def _element_from_file(path: str, default_s: int) -> CobarElement:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if isinstance(data, str):
        return CobarElement.scalar(default_s, Poly.parse(data))
    terms = {}
    for item in data.get("cells", []):
        p = Poly.parse(item["poly"]) if "poly" in item else Poly.from_json(item)
        terms[int(item.get("cell", 0))] = p
    return CobarElement.make(int(data.get("s", default_s)), terms)


def _element(args) -> CobarElement:
    if args.file:
        return _element_from_file(args.file, args.s)
    if args.elt:
        return CobarElement.scalar(args.s, _poly(args.elt))
    raise UsageError("give --file or --elt")


def cmd_cobar_ext(args) -> Result:
    rep = ext_bidegree(args.s, args.t, moore_quotient(_modulus(args)), args.two_power)
    return Result(rep.to_json(), rep.format_text())


def cmd_cobar_alpha(args) -> Result:
    e = alpha_rep(args.i, args.j)
    return Result({"i": args.i, "j": args.j, "rep": e.to_json(), "text": e.format()},
                  f"alpha_{args.i}/{args.j} = {e.format()}")


def cmd_cobar_beta(args) -> Result:
    e = beta_tilde_rep(args.i, args.j)
    return Result({"i": args.i, "j": args.j, "rep": e.to_json(), "text": e.format()},
                  f"beta~_{args.i}/{args.j} = {e.format()}")


def cmd_cobar_check_cocycle(args) -> Result:
    pres = _presentation(args)
    e = _element(args)
    d = cobar_d(e, pres)
    ok = not d
    return Result({"cocycle": ok, "d": d.format(pres)},
                  f"{'cocycle' if ok else 'not a cocycle'}: d = {d.format(pres)}", 0 if ok else 1)


def cmd_cobar_identify(args) -> Result:
    e = _element(args)
    rep = ext_bidegree(e.s, args.t, moore_quotient(_modulus(args)), args.two_power)
    coords = class_identify(e, rep)
    out = coords if isinstance(coords, str) else list(coords)
    return Result({"coordinates": out, "ext": rep.to_json()}, f"{out}\n{rep.format_text()}",
                  1 if isinstance(coords, str) else 0)


# -- aahss -------------------------------------------------------------------------

def cmd_aahss_diff(args) -> Result:
    rec = aahss_differential(args.i, args.m, normalize=not args.no_normalize)
    data = rec.to_json()
    data["matches_table"] = matches_expected(rec)
    return Result(data, rec.format_text())


def cmd_aahss_propagate(args) -> Result:
    rec = aahss_differential(args.i, args.m)
    try:
        new = v1_propagate(rec)
        return Result({"from": rec.to_json(), "to": new.to_json(), "vanishing": False},
                      f"{rec.format_text()}\n  -> {new.format_text()}")
    except VanishingProduct as exc:
        data = {"from": rec.to_json(), "vanishing": True,
                "to": exc.record.to_json() if exc.record else None}
        return Result(data, f"{rec.format_text()}\n  -> vanishing product: {exc}")


def cmd_aahss_normalize(args) -> Result:
    mp, w = james_normalize(args.m, args.depth)
    return Result({"m": args.m, "m_normalized": mp, "window": [w.a, w.b]},
                  f"m = {args.m} -> {mp}, dual window x^{w.a}..x^{w.b}")


def cmd_aahss_greek(args) -> Result:
    ok = greek_existence(args.i, args.j) if args.letter in ("a", "alpha") else None
    stem, s = greek_degree(args.letter, (args.i, args.j))
    return Result({"letter": args.letter, "i": args.i, "j": args.j, "exists": ok, "stem": stem, "s": s},
                  f"{args.letter}_{args.i}/{args.j}: stem {stem}, filtration {s}"
                  + ("" if ok is None else f", existence condition {'holds' if ok else 'fails'}"))


def cmd_aahss_table(args) -> Result:
    rows = []
    for i in range(1, args.i_max + 1):
        for j in range(1, 3 * i):
            a = 3 * i - j
            if not (2 <= a <= args.a_max and greek_existence(i, j)):
                continue
            row = indeterminacy_recompute(i, j) if args.recompute else indeterminacy_table(i, j)
            rows.append({"i": i, "j": j, **row.to_json()})
    text = "\n".join(f"A_{r['i']}/{r['j']}: a={r['a']} nu={r['nu2']} generator {r['generator']}" for r in rows)
    return Result({"rows": rows, "recomputed": bool(args.recompute)}, text or "no rows")


# -- chart -------------------------------------------------------------------------

def cmd_chart_validate(args) -> Result:
    rep = chart_load_validate(chart_load(args.file))
    return Result(rep.to_json(), rep.format_text(), 0 if rep.ok else 1)


def cmd_chart_render(args) -> Result:
    doc = chart_load(args.file)
    svg = chart_render_svg(doc)
    return Result({"svg": svg}, svg)


def cmd_chart_trace(args) -> Result:
    doc = chart_load(args.file)
    try:
        tr = doc.trace(args.element)
    except KeyError as exc:
        raise UsageError(f"no trace for element {args.element!r}") from exc
    rep = froot_trace_check(tr, doc)
    lines = [f"trace {tr.element} (t = {tr.t})"]
    lines += [f"  k={e.k} -N={e.cell} {e.name}" for e in tr.entries]
    lines.append(rep.format_text())
    return Result({"trace": tr.to_json(), "report": rep.to_json()}, "\n".join(lines), 0 if rep.ok else 1)


# -- reproduce -------------------------------------------------------------------

def cmd_reproduce_sec7(args) -> Result:
    from .reproduce import reproduce_section7

    rep = reproduce_section7(args.k_max, jobs=args.jobs)
    return Result(rep.to_json(), rep.format_text(), 0 if rep.all_matched else 1)


# -- parser ---------------------------------------------------------------------

COMMANDS: Dict[Tuple[str, str], Callable] = {
    ("fgl", "two-series"): cmd_fgl_two_series,
    ("fgl", "iso"): cmd_fgl_iso,
    ("fgl", "eta-r"): cmd_fgl_eta_r,
    ("fgl", "log"): cmd_fgl_log,
    ("fgl", "formal-sum"): cmd_fgl_formal_sum,
    ("fgl", "coproduct"): cmd_fgl_coproduct,
    ("fgl", "counit"): cmd_fgl_counit,
    ("comodule", "coaction"): cmd_comodule_coaction,
    ("comodule", "v1-tilde"): cmd_comodule_v1_tilde,
    ("cobar", "ext"): cmd_cobar_ext,
    ("cobar", "alpha"): cmd_cobar_alpha,
    ("cobar", "beta"): cmd_cobar_beta,
    ("cobar", "check-cocycle"): cmd_cobar_check_cocycle,
    ("cobar", "identify"): cmd_cobar_identify,
    ("aahss", "diff"): cmd_aahss_diff,
    ("aahss", "propagate"): cmd_aahss_propagate,
    ("aahss", "normalize"): cmd_aahss_normalize,
    ("aahss", "greek"): cmd_aahss_greek,
    ("aahss", "table"): cmd_aahss_table,
    ("chart", "validate"): cmd_chart_validate,
    ("chart", "render"): cmd_chart_render,
    ("chart", "trace"): cmd_chart_trace,
    ("reproduce", "sec7"): cmd_reproduce_sec7,
}

# Operation -> a command line that exercises it.
OPERATIONS: Dict[str, List[str]] = {
    "poly_arith": ["fgl", "eta-r", "--n", "2"],
    "internal_degree": ["comodule", "coaction", "--window", "1:3"],
    "reduce": ["cobar", "ext", "--s", "0", "--t", "0", "--mod", "2"],
    "nu2": ["aahss", "greek", "--letter", "a", "--i", "4", "--j", "4"],
    "series_compose": ["fgl", "two-series", "--order", "4"],
    "series_reverse": ["fgl", "iso", "--order", "4"],
    "hazewinkel_log": ["fgl", "log", "--n", "2"],
    "build_fgl": ["fgl", "two-series", "--order", "4"],
    "formal_sum": ["fgl", "formal-sum", "--count", "2", "--order", "4"],
    "universal_iso": ["fgl", "iso", "--order", "4"],
    "right_unit": ["fgl", "eta-r", "--n", "2"],
    "counit": ["fgl", "counit", "--poly", "v1 + 2*t1"],
    "coproduct": ["fgl", "coproduct", "--n", "2"],
    "moore_quotient": ["cobar", "ext", "--s", "1", "--t", "2", "--mod", "2"],
    "dual_cp": ["comodule", "coaction", "--window", "1:3", "--cp"],
    "dual_stunted": ["comodule", "coaction", "--window", "1:3"],
    "homology_stunted": ["comodule", "coaction", "--homology", "1:3", "--cell", "-3"],
    "v1_tilde": ["comodule", "v1-tilde", "--homology", "2:4", "--m", "4"],
    "cobar_d": ["cobar", "check-cocycle", "--elt", "t1", "--s", "1", "--mod", "2"],
    "is_cocycle": ["cobar", "check-cocycle", "--elt", "t1", "--s", "1", "--mod", "2"],
    "ext_bidegree": ["cobar", "ext", "--s", "1", "--t", "4", "--mod", "0"],
    "class_identify": ["cobar", "identify", "--elt", "t1", "--s", "1", "--t", "2", "--mod", "2"],
    "alpha_rep": ["cobar", "alpha", "--i", "2", "--j", "2"],
    "beta_tilde_rep": ["cobar", "beta", "--i", "1", "--j", "1"],
    "james_normalize": ["aahss", "normalize", "--m", "-40", "--depth", "5"],
    "aahss_differential": ["aahss", "diff", "--i", "0", "--m", "-4"],
    "v1_propagate": ["aahss", "propagate", "--i", "0", "--m", "-3"],
    "indeterminacy_table": ["aahss", "table", "--a-max", "6", "--i-max", "4"],
    "indeterminacy_recompute": ["aahss", "table", "--a-max", "6", "--i-max", "4", "--recompute"],
    "greek_existence": ["aahss", "greek", "--letter", "a", "--i", "4", "--j", "5"],
    "greek_degree": ["aahss", "greek", "--letter", "b", "--i", "4", "--j", "3"],
    "chart_load_validate": ["chart", "validate", "FIG1"],
    "froot_trace_check": ["chart", "trace", "FIG1", "--element", "a4/4"],
    "chart_render_svg": ["chart", "render", "FIG1"],
    "dispatch": ["fgl", "two-series"],
    "reproduce_section7": ["reproduce", "sec7", "--k-max", "2"],
}


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    p.add_argument("--out", "-o", default=None, help="write the result to this file")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output is identical)")
    p.add_argument("--order", type=int, default=4, help="x-truncation order of series")
    p.add_argument("--trunc", type=int, default=None, help="x-truncation of a window (>= width + 1)")
    p.add_argument("--mod", default="2", help="ideal: 0 (integral), 2, 4, ... or e.g. '2,v1^3'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chromatic-cobar",
                                     description="Exact BP cobar complex and AAHSS computations at p = 2.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)
    sub: Dict[str, argparse._SubParsersAction] = {}
    for group in ("fgl", "comodule", "cobar", "aahss", "chart", "reproduce"):
        g = groups.add_parser(group)
        sub[group] = g.add_subparsers(dest="command", required=True)

    def cmd(group, name, help_):
        p = sub[group].add_parser(name, help=help_)
        _common(p)
        return p

    cmd("fgl", "two-series", "coefficients c_i of [2]_F(x)")
    cmd("fgl", "iso", "universal isomorphism f and its inverse")
    cmd("fgl", "eta-r", "right unit of v_n").add_argument("--n", type=int, default=1)
    cmd("fgl", "log", "Hazewinkel logarithm").add_argument("--n", type=int, default=2)
    p = cmd("fgl", "formal-sum", "[n]_F(x) as an iterated formal sum")
    p.add_argument("--count", type=int, default=2)
    cmd("fgl", "coproduct", "coproduct of t_n").add_argument("--n", type=int, default=1)
    cmd("fgl", "counit", "counit of a polynomial").add_argument("--poly", required=True)

    for name, help_ in (("coaction", "coaction on one generator"),):
        p = cmd("comodule", name, help_)
        p.add_argument("--window", help="dual window a:b of x-powers")
        p.add_argument("--homology", help="l:k for BP_* P^{2k}_{2l-1}")
        p.add_argument("--cp", action="store_true", help="complex projective window (no [2]_F relation)")
        p.add_argument("--cell", type=int, default=None)
    p = cmd("comodule", "v1-tilde", "v~1 on a homology generator e_{2m-1}")
    p.add_argument("--homology", required=True)
    p.add_argument("--m", type=int, required=True)

    p = cmd("cobar", "ext", "Ext^{s,t} of a Moore quotient")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--two-power", type=int, default=8)
    for name in ("alpha", "beta"):
        p = cmd("cobar", name, f"{name} representative")
        p.add_argument("--i", type=int, required=True)
        p.add_argument("--j", type=int, default=1)
    for name, help_ in (("check-cocycle", "test d(e) = 0"), ("identify", "coordinates of [e] in Ext")):
        p = cmd("cobar", name, help_)
        p.add_argument("--file", help="element JSON")
        p.add_argument("--elt", help="element of the first cell, as a polynomial")
        p.add_argument("--s", type=int, default=1)
        if name == "identify":
            p.add_argument("--t", type=int, required=True)
            p.add_argument("--two-power", type=int, default=8)
        else:
            p.add_argument("--window")
            p.add_argument("--homology")
            p.add_argument("--cp", action="store_true")

    p = cmd("aahss", "diff", "d_r(v1^i[2m-1])")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--no-normalize", action="store_true")
    p = cmd("aahss", "propagate", "v1-propagate d_r(v1^i[2m-1])")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p = cmd("aahss", "normalize", "James periodicity representative")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p = cmd("aahss", "greek", "existence and degree of a Greek letter element")
    p.add_argument("--letter", choices=("a", "b", "alpha", "beta"), required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, default=1)
    p = cmd("aahss", "table", "indeterminacy table rows")
    p.add_argument("--a-max", type=int, default=12)
    p.add_argument("--i-max", type=int, default=32)
    p.add_argument("--recompute", action="store_true", help="derive every row from AAHSS differentials")

    for name, help_ in (("validate", "validate a chart document"), ("render", "render a chart to SVG"),
                        ("trace", "check one root-invariant trace")):
        p = cmd("chart", name, help_)
        p.add_argument("file")
        if name == "trace":
            p.add_argument("--element", required=True)

    p = cmd("reproduce", "sec7", "the d_r(1[2m-1]) pipeline with reference values side by side")
    p.add_argument("--k-max", type=int, default=6)
    return parser


def dispatch(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = COMMANDS[(args.group, args.command)]
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        result = handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except (ChromaticCobarError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    text = result.render(args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return result.status


def main(argv: Optional[List[str]] = None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
