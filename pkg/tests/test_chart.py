import copy
import json

import pytest

from chromatic_cobar.chart import (FIG1_PATH, ChartDoc, FRITrace, TraceEntry, alpha_order_log2, chart_from_json,
                                   chart_load, chart_load_validate, chart_loads, chart_render_svg, display_name,
                                   fig1, froot_trace_check)
from chromatic_cobar.errors import ParseError


@pytest.fixture(scope="module")
def data():
    return json.loads(FIG1_PATH.read_text())


def _find(items, **match):
    return next(x for x in items if all(x.get(k) == v for k, v in match.items()))


def _rules(d):
    return chart_load_validate(chart_from_json(d)).rules()


def test_fig1_validates():
    rep = chart_load_validate(fig1())
    assert rep.ok, rep.format_text()
    doc = fig1()
    assert rep.checked == len(doc.classes) + len(doc.differentials) + len(doc.extensions) + len(doc.traces)


def test_every_trace_passes():
    doc = fig1()
    assert len(doc.traces) == 24
    for tr in doc.traces:
        assert froot_trace_check(tr, doc).ok, tr.element


def test_json_roundtrip(data):
    doc = fig1()
    assert chart_loads(doc.dumps()) == doc
    assert chart_load(FIG1_PATH) == doc


def test_beta_4_3_position():
    c = fig1().find("b4/3")
    assert (c.stem, c.s) == (16, 2)


def test_alpha_orders():
    assert [alpha_order_log2(i) for i in (1, 2, 3, 4, 6, 8, 12, 16)] == [1, 2, 1, 4, 3, 5, 4, 6]


# -- mutations: each one is caught by the expected rule ------------------------------------

def _mutated(data, fn):
    d = copy.deepcopy(data)
    fn(d)
    return d


def _bump_d3_target(d):
    diff = _find(d["differentials"], **{"from": "a7"})
    _find(d["classes"], name=diff["to"])["s"] += 1


def _reverse_trace(d):
    tr = _find(d["traces"], element="a4/2")
    tr["entries"][1]["cell"] = tr["entries"][0]["cell"] - 1


MUTATIONS = [
    ("differential target filtration", _bump_d3_target, "differential-filtration"),
    ("differential page", lambda d: _find(d["differentials"], **{"from": "b5"}).update(r=1), "page"),
    ("greek stem", lambda d: _find(d["classes"], name="b4/3").update(stem=17), "greek-degree"),
    ("alpha existence", lambda d: d["classes"].append({"name": "a2/4", "stem": 3, "s": 1}), "greek-existence"),
    ("duplicate", lambda d: d["classes"].append(dict(_find(d["classes"], name="a1"))), "duplicate-name"),
    ("tower order", lambda d: _find(d["classes"], name="a8").update(order="4"), "order"),
    ("product degree", lambda d: _find(d["classes"], name="a1^3").update(stem=4), "product-degree"),
    ("trace N decreasing", _reverse_trace, "trace-order"),
    ("trace stem", lambda d: _find(d["traces"], element="a4/4").update(t=9), "trace-stem"),
    ("trace filtration", lambda d: _find(d["traces"], element="a1")["entries"][0].update(k=2), "trace-filtration"),
    ("trace unknown class", lambda d: _find(d["traces"], element="a1")["entries"][0].update({"class": "b99"}),
     "trace-class"),
    ("extension stem", lambda d: _find(d["extensions"], **{"from": "b4"}).update(right=["a1"]), "extension-stem"),
    ("trace link", lambda d: _find(d["traces"], element="a5")["entries"][1]["link"].update(via="a2/2"),
     "trace-link"),
]


@pytest.mark.parametrize("label,fn,rule", MUTATIONS, ids=[m[0] for m in MUTATIONS])
def test_mutation_rejected(data, label, fn, rule):
    assert rule in _rules(_mutated(data, fn))


def test_single_filtration_bump_gives_one_violation(data):
    # d_3 -> d_4 on alpha_7; the trace for 2^7 leans on this differential and reports separately
    rep = chart_load_validate(chart_from_json(_mutated(data, lambda d: _find(
        d["differentials"], **{"from": "a7"}).update(r=4))))
    assert [v.rule for v in rep.violations if not v.rule.startswith("trace")] == ["differential-filtration"]


def test_trace_entries_2k():
    doc = fig1()
    tr = doc.trace("2^7")
    assert [(e.k, e.name) for e in tr.entries] == [(1, "a7"), (3, "a5*a1^2")]
    assert tr.entries[0].N == 14
    with pytest.raises(KeyError):
        doc.trace("nope")


def test_trace_alpha_4_4():
    tr = fig1().trace("a4/4")
    assert tr.t == 7 and tr.entries[0].N == 8 and tr.entries[0].name == "b4/4"


def test_standalone_trace_check():
    doc = fig1()
    bad = FRITrace("x", 7, (TraceEntry(2, -8, "b4/4"), TraceEntry(1, -6, "a4/4*a1", {"kind": "hidden"})))
    rules = froot_trace_check(bad, doc).rules()
    assert "trace-order" in rules


@pytest.mark.parametrize("text", ["{", "[]", '{"classes": [{"name": "a1"}]}',
                                  '{"classes": [{"name": "a1", "stem": "1", "s": 1}]}'])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        chart_loads(text)


# -- rendering ---------------------------------------------------------------------------

def test_render_deterministic():
    assert chart_render_svg(fig1()) == chart_render_svg(chart_loads(fig1().dumps()))


def test_render_fig1_labels():
    svg = chart_render_svg(fig1())
    for i in range(1, 16):
        assert f">α{i}</text>" in svg
    assert "Πβ2/2" in svg and "η3/2" in svg
    assert svg.count("marker-end") == len(fig1().differentials)


def test_render_empty_chart():
    svg = chart_render_svg(ChartDoc())
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert "<circle" not in svg and "<line" in svg


def test_display_names():
    assert display_name("a4/3") == "α4/3"
    assert display_name("Pb2/2") == "Πβ2/2"
    assert display_name("eta3/2") == "η3/2"
    assert display_name("a1^2") == "α1^2"
