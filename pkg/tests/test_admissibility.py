from fractions import Fraction as Fr

import pytest
import sympy

from hypgamma.admissibility import (AdmissibleQuadruple, _primitive, admissible_quadruples, build_system,
                                    evaluate_poly, find_quadruple, is_nonresonant)
from hypgamma.algebra import AlgNum, poly_from_text
from hypgamma.contiguity import ShiftVector


def _offsets(q):
    return tuple(o for o in q.offsets)


def test_system_221():
    sys_ = build_system((2, 2, 1))
    expected = {poly_from_text(s) for s in (
        "8*z+1", "2+a+b-2*c+7*z+5*a*z+5*b*z-4*c*z",
        "1+a+b+a*b-2*c-a*c-b*c+c^2+z+2*a*z+a^2*z+2*b*z+a*b*z+b^2*z-c*z-a*c*z-b*c*z")}
    # equations are stored primitive with a positive leading coefficient
    assert set(sys_.equations) == {_primitive(e) for e in expected}


def test_zero_shift_empty():
    assert build_system((0, 0, 0)).equations == ()


def test_solve_221():
    res = admissible_quadruples((2, 2, 1))
    got = {(q.offsets, q.z0) for q in res.quadruples}
    want = {((AlgNum(0), AlgNum(Fr(1, 3)), AlgNum(Fr(5, 6))), AlgNum(Fr(-1, 8))),
            ((AlgNum(0), AlgNum(Fr(-1, 3)), AlgNum(Fr(2, 3))), AlgNum(Fr(-1, 8)))}
    assert len(res.quadruples) == 2
    for q in res.quadruples:
        assert any(q.offsets == o and q.z0 == zz for o, zz in want)
    assert not res.unsolved
    assert all(not q.resonant for q in res.quadruples)


def test_solve_310():
    quads = admissible_quadruples((3, 1, 0)).quadruples
    zs = {q.z0.to_fraction() for q in quads if q.offsets[1] == AlgNum(Fr(1, 6))}
    assert {Fr(-3), Fr(9)} <= zs


def test_solve_244():
    q = find_quadruple((2, 4, 4), (0, Fr(-1, 2), 0), AlgNum(-2 + sympy.sqrt(8)))
    assert q is not None and not q.resonant


def test_111_has_no_nonresonant_point():
    res = admissible_quadruples((1, 1, 1))
    assert all(q.resonant for q in res.quadruples)


def test_every_solution_satisfies_system():
    for g in [(2, 2, 1), (3, 1, 0), (-1, 3, 2), (0, 1, 3)]:
        sys_ = build_system(g)
        for q in admissible_quadruples(g).quadruples:
            vals = {"a": q.a0, "b": q.b0, "c": q.c0, "z": q.z0}
            assert all(not evaluate_poly(e, vals) for e in sys_.equations)


def test_resonance_classifier():
    q = AdmissibleQuadruple(ShiftVector(2, 2, 1), AlgNum(0), AlgNum(Fr(1, 3)), AlgNum(Fr(5, 6)), AlgNum(Fr(-1, 8)))
    assert is_nonresonant(q) == (True, None)
    q = AdmissibleQuadruple(ShiftVector(0, 1, 3), AlgNum(Fr(1, 2)), AlgNum(0), AlgNum(-1), AlgNum(Fr(3, 4)))
    assert is_nonresonant(q)[0]
    q = AdmissibleQuadruple(ShiftVector(0, 1, 3), AlgNum(2), AlgNum(0), AlgNum(-1), AlgNum(Fr(3, 4)))
    ok, wit = is_nonresonant(q)
    assert not ok and wit.startswith("a+kt")


def test_json_roundtrip():
    for q in admissible_quadruples((2, 2, 1)).quadruples:
        back = AdmissibleQuadruple.from_json(q.to_json())
        assert back.key() == q.key() and back.resonant == q.resonant
