"""CLI behaviour: exit codes, JSON reports against golden files, determinism.

Set TWLAB_REGEN_GOLDEN=1 to rewrite the golden files after an intended change.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

import twlab
from twlab.cli import main, run

GOLDEN = Path(__file__).parent / "golden"

# name -> (argv, exit code)
COMMANDS = {
    "ring_idempotents": (["ring", "idempotents", "Z/6"], 0),
    "ring_units": (["ring", "units", "Z/12"], 0),
    "ring_axioms": (["ring", "axioms", "GF(2,2)"], 0),
    "ring_tables": (["ring", "tables", "Z/2xZ/2"], 0),
    "poly_reduce": (["poly", "reduce", "x^5 + x", "--q", "4", "--ring", "GF(2,2)"], 0),
    "poly_substitute": (["poly", "substitute", "x^2", "--bind", "x=x+y", "--ring", "Z/2"], 0),
    "poly_eval": (["poly", "eval", "x^2 + [2]*x", "--at", "x=3", "--ring", "GF(2,2)"], 0),
    "biring_coideal_z6": (["biring", "coideal", "Z/6", "6", "--expect", "fail"], 0),
    "biring_coideal_gf3": (["biring", "coideal", "GF(3,1)", "3"], 0),
    "biring_colaws": (["biring", "colaws", "GF(2,1)", "--q", "2"], 0),
    "biring_coadd": (["biring", "coadd", "Z/3", "x^2"], 0),
    "biring_comul": (["biring", "comul", "Z/2", "x^2 + x"], 0),
    "lawvere_coop": (["lawvere", "coop", "CommRing", "Z/2", "--depth", "1"], 0),
    "lawvere_hom": (["lawvere", "hom", "AbGroup", "Z/3"], 0),
    "lawvere_model": (["lawvere", "model", "Monoid", "Z/4"], 0),
    "toy_iso": (["toy", "iso", "GF(2,1)"], 0),
    "toy_kernel": (["toy", "kernel", "GF(3,1)", "--lifts", "10"], 0),
    "toy_mu_field": (["toy", "mu", "GF(2,2)"], 0),
    "toy_mu_z6": (["toy", "mu", "Z/6", "--expect", "fail"], 0),
    "toy_decompositions": (["toy", "decompositions", "Z/6", "--slots", "2"], 0),
    "toy_support": (["toy", "support", "Z/6"], 0),
    "toy_delta0": (["toy", "delta0", "GF(3,1)"], 0),
    "tw_axioms_fun": (["tw", "axioms", "fun", "GF(2,1)"], 0),
    "tw_axioms_monoid": (["tw", "axioms", "monoid", "2", "--samples", "3"], 0),
    "tw_compose": (["tw", "compose", "poly", "GF(2,1)", "x^2", "x + 1"], 0),
    "tw_descent_z6": (["tw", "descent", "Z/6", "6", "--expect", "fail"], 0),
    "tw_transport": (["tw", "transport", "GF(2,1)"], 0),
    "tw_curry": (["tw", "curry", "2", "2", "Z/3", "--roster", "Z/3"], 0),
    "tw_cogroup": (["tw", "cogroup", "4"], 0),
    "suite_small": (["suite", str(GOLDEN / "suite_small.config.json")], 0),
}


def _normalise(doc):
    doc = dict(doc)
    doc["tool_version"] = "<version>"
    doc["command"] = [Path(a).name if a.startswith(str(GOLDEN)) else a for a in doc["command"]]
    return doc


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_golden_reports(name, capsys):
    argv, code = COMMANDS[name]
    got_code, doc = run(argv)
    assert got_code == code, capsys.readouterr().err
    assert doc["schema"] == 1 and doc["tool_version"] == twlab.__version__
    path = GOLDEN / f"{name}.json"
    text = json.dumps(_normalise(doc), indent=2, sort_keys=True) + "\n"
    if os.environ.get("TWLAB_REGEN_GOLDEN"):
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(text)
    assert text == path.read_text()


def test_report_shape(capsys):
    code, doc = run(["ring", "idempotents", "Z/6"])
    assert code == 0
    assert set(doc) == {"schema", "tool_version", "command", "seed", "expect", "cases", "summary"}
    (case,) = doc["cases"]
    assert set(case) == {"name", "inputs", "expected", "got", "pass"}
    assert case["got"] == ["0", "1", "3", "4"]
    assert doc["summary"] == {"total": 1, "passed": 1, "failed": 0}
    err = capsys.readouterr().err
    assert "PASS 1/1" in err


def test_output_is_byte_identical(tmp_path):
    # separate interpreters with different hash seeds, same output path
    path = tmp_path / "report.json"
    argv = ["tw", "axioms", "poly", "GF(2,2)", "--seed", "7", "--json", str(path)]
    outs = []
    for hashseed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        subprocess.run([sys.executable, "-m", "twlab", *argv], env=env, check=True, capture_output=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert main(argv) == 0 and path.read_bytes() == outs[0]


def test_expect_flips_exit_code():
    assert run(["toy", "mu", "Z/6"])[0] == 1
    assert run(["toy", "mu", "Z/6", "--expect", "fail"])[0] == 0
    assert run(["toy", "mu", "GF(2,1)", "--expect", "fail"])[0] == 1


@pytest.mark.parametrize("argv,needle", [
    (["ring", "units", "Z/0"], "at byte 2"),
    (["ring", "units", "Z/8192"], "CapExceeded"),
    (["poly", "eval", "x +", "--at", "x=1", "--ring", "Z/2"], "PolynomialParseError"),
    (["poly", "eval", "x*y", "--at", "x=1", "--ring", "Z/2"], "UnboundVariable"),
    (["toy", "iso", "Z/6"], "NotAField"),
    (["ring", "frobnicate", "Z/2"], "invalid choice"),
    (["ring", "units", "Z/2", "--seed", "-1"], "unsigned 64-bit"),
    (["ring", "units", "Z/2", "--seed", str(2 ** 64)], "unsigned 64-bit"),
    (["ring", "units", "Z/2", "--frob"], "unrecognized arguments"),
])
def test_usage_and_input_errors_exit_2(argv, needle, capsys):
    code, doc = run(argv)
    assert code == 2 and doc is None
    assert needle in capsys.readouterr().err


def test_suite_with_config(tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"roster": ["GF(2,1)"], "seed": 1, "criteria": ["AC1", "AC4", "AC9"]}))
    code, doc = run(["suite", str(cfg)])
    assert code == 0
    assert doc["seed"] == 1
    assert run(["suite", str(cfg), "--seed", "4"])[1]["seed"] == 4
    names = [c["name"] for c in doc["cases"]]
    assert names and all(n.split()[0] in {"AC1", "AC4", "AC9"} for n in names)


@pytest.mark.parametrize("body,needle", [
    ({"roster": ["Z/0"]}, "at byte 2"),
    ({"colour": "red"}, "colour"),
    ({"criteria": ["AC99"]}, "AC99"),
    ({"seed": -3}, "seed"),
    ({"roster": ["Z/12"], "caps": {"carrier": 8}, "criteria": ["AC2"]}, "CapExceeded"),
])
def test_suite_config_errors(tmp_path, body, needle, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps(body))
    assert run(["suite", str(cfg)])[0] == 2
    assert needle in capsys.readouterr().err


def test_suite_in_parallel_matches_serial(tmp_path):
    cfg = GOLDEN / "suite_small.config.json"
    serial = run(["suite", str(cfg)])[1]
    parallel = run(["suite", str(cfg), "--jobs", "3"])[1]
    assert parallel["cases"] == serial["cases"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "twlab", "tw", "cogroup", "2"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["cases"][0]["got"] == 1
    assert "PASS" in out.stderr
