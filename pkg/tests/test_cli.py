import io
import json
import subprocess
import sys
from dataclasses import replace
from fractions import Fraction as Fr

import pytest

import hypgamma.catalog as catalog_pkg
from hypgamma.cli import EXIT_FAIL, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, dispatch
from hypgamma.numerics import Const, Power, T


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv)
    doc = json.loads(out)
    assert set(doc) == {"command", "inputs", "results", "warnings"}
    return code, doc


def test_contiguity_json():
    code, doc = run_json("contiguity", "--shift", "2,2,1")
    assert code == EXIT_OK and doc["command"] == "contiguity"
    assert doc["inputs"]["shift"] == "2,2,1"
    assert "R" in json.dumps(doc["results"])


def test_admissible_221():
    code, doc = run_json("admissible", "--shift", "2,2,1")
    assert code == EXIT_OK
    quads = doc["results"]["quadruples"]
    assert len(quads) == 2
    text = json.dumps(quads[0])
    assert "-1/8" in text and "1/3" in text and "5/6" in text


def test_interpolate_latex():
    code, out, _ = run("interpolate", "--shift", "2,2,1", "--branch", "0", "--format", "latex")
    assert code == EXIT_OK
    assert r"\Gamma(2/3)" in out and r"\left(\frac{16}{27}\right)^{t}" in out


def test_interpolate_with_offsets_text():
    code, out, _ = run("interpolate", "--shift", "3,1,0", "--offsets", "0,1/6,1/2", "--z0", "9",
                       "--format", "text")
    assert code == EXIT_OK
    assert "(1/64)^(t)" in out


def test_kernel_r0():
    code, doc = run_json("kernel", "--shift", "2,2,1")
    assert code == EXIT_OK
    assert "16/27" in json.dumps(doc["results"])


def test_associates_normal_form():
    code, doc = run_json("associates", "--shift", "2,2,1")
    assert code == EXIT_OK
    assert doc["results"]["normal_form"] == {"gamma": [2, 2, 3], "row": 9}
    assert len(doc["results"]["orbit"]["members"]) == 24


def test_associates_of_quadruple():
    code, doc = run_json("associates", "--shift", "2,2,1", "--offsets", "0,1/3,5/6", "--z0", "-1/8")
    assert code == EXIT_OK
    assert len(doc["results"]["images"]) == 24


def test_eval2f1_text():
    code, out, _ = run("eval2f1", "--a", "1/3", "--b", "1/5", "--c", "2", "--z", "1", "--format", "text")
    assert code == EXIT_OK and "±" in out


def test_eval2f1_internal_error():
    code, _, err = run("eval2f1", "--a", "1/2", "--b", "1/2", "--c", "-2", "--z", "1/3")
    assert code == EXIT_INTERNAL and "CNonPositiveInteger" in err


@pytest.mark.parametrize("argv", [
    ("contiguity", "--shift", "0,0,0"),
    ("contiguity", "--shift", "1,2"),
    ("bogus",),
    ("eval2f1", "--a", "x+", "--b", "1", "--c", "2", "--z", "0.5"),
    ("catalog", "verify"),
    ("catalog", "verify", "--id", "no-such-entry"),
    ("contiguity", "--shift", "2,2,1", "--prec", "8"),
])
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == EXIT_USAGE


def test_catalog_verify_single():
    code, doc = run_json("catalog", "verify", "--id", "gauss-at-half", "--prec", "96")
    assert code == EXIT_OK and doc["results"][0]["verdict"] == "pass"


def test_catalog_failure_exit_code(monkeypatch):
    good = catalog_pkg.load_catalog()
    e = catalog_pkg.entry_by_id("gauss-at-half", good)
    bad = replace(e, rhs=Power(Const(Fr(3, 2)), T))
    monkeypatch.setattr(catalog_pkg, "load_catalog", lambda: [bad])
    code, doc = run_json("catalog", "verify-all", "--prec", "96")
    assert code == EXIT_FAIL and doc["results"][0]["verdict"] == "fail"


def test_catalog_list():
    code, doc = run_json("catalog", "list")
    assert code == EXIT_OK and len(doc["results"]) >= 30


def test_output_is_deterministic():
    a = run("admissible", "--shift", "3,1,0")[1]
    b = run("admissible", "--shift", "3,1,0")[1]
    assert a == b


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypgamma.cli", "contiguity", "--shift", "1,0,0", "--format", "text"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout.strip()


def test_negative_values_after_options():
    code, doc = run_json("eval2f1", "--a", "-1/3", "--b", "1/2", "--c", "3/2", "--z", "-3")
    assert code == EXIT_OK
    code, _ = run_json("contiguity", "--shift", "-1,2,1")
    assert code == EXIT_OK
