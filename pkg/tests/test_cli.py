import io
import json
import subprocess
import sys

import pytest

from chromatic_cobar.chart import FIG1_PATH
from chromatic_cobar.cli import COMMANDS, OPERATIONS, dispatch


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def _argv(argv):
    return [str(FIG1_PATH) if a == "FIG1" else a for a in argv]


@pytest.mark.parametrize("op", sorted(OPERATIONS))
def test_every_operation_runs(op):
    code, out, err = run(*_argv(OPERATIONS[op]))
    assert code == 0, err
    assert out


def test_every_command_is_exercised():
    used = {tuple(argv[:2]) for argv in OPERATIONS.values()}
    assert used == set(COMMANDS)


def test_two_series_json():
    code, out, _ = run("fgl", "two-series", "--order", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["c"] == ["2", "-v1", "2*v1^2"]


@pytest.mark.parametrize("argv", [["fgl", "two-series", "--order", "5"], ["aahss", "diff", "--i", "1", "--m", "-3"],
                                  ["cobar", "ext", "--s", "1", "--t", "8", "--mod", "2"]])
def test_text_and_json_agree(argv):
    _, text, _ = run(*argv, "--format", "text")
    _, js, _ = run(*argv, "--format", "json")
    data = json.loads(js)
    # every string leaf of the JSON payload appears verbatim in the text rendering
    leaves = []

    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        elif isinstance(x, str) and x:
            leaves.append(x)
    walk(data)
    assert leaves
    for leaf in leaves:
        assert leaf in text, leaf


def test_two_series_text_parses_back():
    _, text, _ = run("fgl", "two-series", "--order", "4")
    _, js, _ = run("fgl", "two-series", "--order", "4", "--format", "json")
    parsed = [line.split(" = ", 1)[1] for line in text.splitlines()]
    assert parsed == json.loads(js)["c"]


def test_usage_errors_exit_2():
    assert run("fgl", "two-series", "--bogus")[0] == 2
    assert run("nope")[0] == 2
    assert run("fgl", "two-series", "--jobs", "0")[0] == 2
    assert run("chart", "trace", str(FIG1_PATH), "--element", "zzz")[0] == 2


def test_computation_errors_exit_1():
    code, out, err = run("cobar", "alpha", "--i", "2", "--j", "3")
    assert code == 1 and "NotDivisible" in err and not out
    assert run("chart", "validate", "/nonexistent.json")[0] == 1


def test_failed_validation_exit_1(tmp_path):
    bad = json.loads(FIG1_PATH.read_text())
    bad["classes"][1]["stem"] += 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run("chart", "validate", str(path))
    assert code == 1 and "greek-degree" in out


def test_out_flag(tmp_path):
    target = tmp_path / "fig1.svg"
    assert run("chart", "render", str(FIG1_PATH), "-o", str(target))[0] == 0
    assert target.read_text().startswith("<svg")


def test_reproduce_subset_and_determinism():
    code, first, _ = run("reproduce", "sec7", "--k-max", "3", "--format", "json")
    assert code == 0
    data = json.loads(first)
    assert data["k_max"] == 3
    assert data["flagged"] == []
    assert data["summary"] == "table rows matched: all; flagged discrepancies: 0"
    assert all(r["match"] for r in data["rows"])
    _, again, _ = run("reproduce", "sec7", "--k-max", "3", "--format", "json", "--jobs", "2")
    assert again == first


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "chromatic_cobar.cli", "fgl", "eta-r", "--n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "v1 + 2*t1" in proc.stdout
