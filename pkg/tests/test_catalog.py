from dataclasses import replace
from fractions import Fraction as Fr

import mpmath
import pytest
import sympy
from mpmath import mpf

from hypgamma.algebra import AlgNum
from hypgamma.catalog import (CATALOG_FILE, CatalogEntry, builtin_entries, dump_lines, entry_by_id, load_catalog,
                              polynomial_reading, reproduce_entry, sample_points, verify_entry)
from hypgamma.catalog.harness import is_bad_sample
from hypgamma.numerics import Const, Power, T
from hypgamma.numerics.expr import Lin


@pytest.fixture(scope="module")
def entries():
    return load_catalog()


def test_at_least_thirty_entries(entries):
    assert len(entries) >= 30
    assert len({e.id for e in entries}) == len(entries)


def test_file_matches_builtin(entries):
    assert CATALOG_FILE.read_text(encoding="utf-8") == dump_lines(builtin_entries())


def test_line_round_trip(entries):
    for e in entries:
        assert CatalogEntry.from_line(e.to_line()).to_line() == e.to_line()


def test_required_arguments_present(entries):
    zs = {e.z0 for e in entries if e.z0 is not None}
    for z in (2, 4, 9):
        assert AlgNum(z) in zs
    assert any("sqrt(3)" in z.to_text() for z in zs)
    assert any("sqrt(2)" in z.to_text() for z in zs)  # √8 = 2√2


def test_sample_points_avoid_singular_set(entries):
    for e in entries:
        for t in sample_points(e, extra=3, seed=7):
            assert not is_bad_sample(e, t)


def test_extra_samples_are_seeded():
    e = entry_by_id("sample-(3,1,0)-c=1/2-z=9")
    assert sample_points(e, extra=4, seed=3) == sample_points(e, extra=4, seed=3)
    assert sample_points(e, extra=4, seed=3) != sample_points(e, extra=4, seed=4)


@pytest.mark.parametrize("entry_id", [
    "gauss-at-1", "kummer-at-minus-1", "bateman-at-minus-third", "quadratic-at-2",
    "sample-(1,3,1)", "sample-(3,1,0)-c=1/2-z=9", "sample-(2,4,4)", "sample-(1,1,0)",
    "resonant-F(1+t,1,2|3)",
])
def test_entry_verifies(entry_id):
    r = verify_entry(entry_by_id(entry_id), prec=128)
    assert r.verdict == "pass", r.to_json()
    assert r.max_discrepancy() < 1e-25


def test_tampered_entry_fails():
    e = entry_by_id("sample-(3,1,0)-c=1/2-z=9")
    bad = replace(e, rhs=Power(Const(Fr(1, 63)), T))
    assert verify_entry(bad, prec=96).verdict == "fail"


def test_unannotated_negative_power_is_skipped():
    e = entry_by_id("gauss-at-half")
    bad = replace(e, rhs=Power(Const(-2), T))
    r = verify_entry(bad, prec=96)
    assert r.verdict == "skipped" and "branch" in r.reason.lower()


def test_polynomial_corrections_checked():
    for eid in ("sample-(1,3,2)", "sample-(0,1,3)", "sample-(2,4,4)", "sample-(3,3,4)-c=2/3"):
        r = verify_entry(entry_by_id(eid), prec=128)
        assert r.polynomial_checks and all(c.passed for c in r.polynomial_checks)


def test_polynomial_reading_is_a_finite_sum():
    # F(-2, 1, 1 | z) = (1 - z)^2
    v = polynomial_reading((Lin(0, -2), Lin(0, 1), Lin(0, 1)), Fr(0), AlgNum(Fr(1, 3)), 96)
    with mpmath.workprec(200):
        assert v.contains(mpf(4) / 9)


def test_sign_alternative_resolved():
    r = verify_entry(entry_by_id("sample-(3,3,4)-z=4/3"), prec=128)
    assert r.alternatives == {"sqrt(-3) = i*sqrt(3)": "pass", "sqrt(-3) = -i*sqrt(3)": "fail"}


def test_resonant_terminating_zero():
    e = entry_by_id("resonant-F(-1,lt,mt|m/l)-(3,2)")
    r = verify_entry(e, t_samples=[Fr(7, 10)], prec=96)
    assert r.passed and r.samples[0].absolute


def test_conjugate_symmetry_on_real_cut_entries():
    r = verify_entry(entry_by_id("sample-(3,1,0)-c=3/2-z=9"), prec=96)
    assert r.conjugate_checks and all(c["passed"] for c in r.conjugate_checks)


@pytest.mark.slow
@pytest.mark.parametrize("entry_id", ["sample-(1,3,2)", "sample-(-1,2,1)-c=4/3"])
def test_reproduce_from_pipeline(entry_id):
    out = reproduce_entry(entry_by_id(entry_id), prec=192)
    assert out["found"] and out["passed"], out


def test_gauss_fixed_high_precision():
    r = verify_entry(entry_by_id("gauss-at-1-fixed"), prec=192)
    assert r.passed and r.max_discrepancy() < 1e-30


def test_alg_z0_stored_exactly(entries):
    e = entry_by_id("sample-(2,4,4)", entries)
    assert e.z0 == AlgNum(-2 + sympy.sqrt(8))
