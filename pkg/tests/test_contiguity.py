from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from hypgamma.algebra import RING, AlgNum, RatFunc, a, b, c, z
from hypgamma.contiguity import (ONE, ZERO, ShiftVector, derivative_pair, elementary_matrix,
                                 mat_mul, shift_relation, substitute_line, transition_matrix)

SYMS = sympy.symbols("a b c z")


def num(f: RatFunc, vals):
    return sympy.lambdify(SYMS, f.to_sympy(), "mpmath")(*vals)


def F(vals, shift=(0, 0, 0)):
    (av, bv, cv, zv), (k, l, m) = vals, shift
    return mpmath.hyp2f1(av + k, bv + l, cv + m, zv)


def dF(vals):
    av, bv, cv, zv = vals
    return mpmath.diff(lambda x: mpmath.hyp2f1(av, bv, cv, x), zv)


POINT = (mpmath.mpf(1) / 3, mpmath.mpf(1) / 5, mpmath.mpf(1) / 7, mpmath.mpf(1) / 9)


def test_worked_example_221():
    rel = shift_relation((2, 2, 1))
    assert rel.R == RatFunc(c * (2 + a + b - c), (a + 1) * (b + 1) * (z - 1) ** 2)
    qnum = c * ((1 + 2 * a + a ** 2 + 2 * b + a * b + b ** 2 - c - a * c - b * c) * z
                + (1 + a - c) * (1 + b - c))
    assert rel.Q == RatFunc(qnum, a * (1 + a) * b * (1 + b) * (z - 1) ** 2)


def test_zero_shift():
    rel = shift_relation((0, 0, 0))
    assert rel.R == ONE and rel.Q == ZERO


def test_derivative_pair_examples():
    assert derivative_pair(ONE, ZERO) == (ZERO, ONE)
    # F'' from the ODE z(1-z)F'' + (c-(a+b+1)z)F' - abF = 0
    R, Q = derivative_pair(ZERO, ONE)
    L = z * (1 - z)
    assert R == RatFunc(a * b, L) and Q == RatFunc(-(c - (a + b + 1) * z), L)


def test_second_derivative_numeric():
    R2, Q2 = derivative_pair(*derivative_pair(ONE, ZERO))
    vals = POINT
    with mpmath.workdps(40):
        lhs = mpmath.diff(lambda x: mpmath.hyp2f1(*vals[:3], x), vals[3], 2)
        rhs = num(R2, vals) * F(vals) + num(Q2, vals) * dF(vals)
    assert abs(lhs - rhs) < 1e-25


def test_elementary_rows():
    assert elementary_matrix("+a")[0] == (ONE, RatFunc(z, a))
    assert elementary_matrix("-c")[0] == (ONE, RatFunc(z, c - 1))
    ident = mat_mul(elementary_matrix("-a", (1, 0, 0)), elementary_matrix("+a"))
    assert ident == ((ONE, ZERO), (ZERO, ONE))


@pytest.mark.parametrize("direction,shift", [("+a", (1, 0, 0)), ("-a", (-1, 0, 0)), ("+b", (0, 1, 0)),
                                             ("-b", (0, -1, 0)), ("+c", (0, 0, 1)), ("-c", (0, 0, -1))])
def test_elementary_numeric(direction, shift):
    (R, Q), _ = elementary_matrix(direction)
    vals = POINT
    with mpmath.workdps(40):
        lhs = F(vals, shift)
        rhs = num(R, vals) * F(vals) + num(Q, vals) * dF(vals)
    assert abs(lhs - rhs) < 1e-25


shifts = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))


@given(shifts)
def test_relation_numeric(g):
    rel = shift_relation(g)
    vals = (mpmath.mpf("0.31"), mpmath.mpf("0.27"), mpmath.mpf("1.43"), mpmath.mpf("0.21"))
    with mpmath.workdps(40):
        lhs = F(vals, g)
        rhs = num(rel.R, vals) * F(vals) + num(rel.Q, vals) * dF(vals)
    assert abs(lhs - rhs) < 1e-20 * max(1, abs(lhs))


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)))
def test_path_independence(g):
    assert transition_matrix(g, "abc") == transition_matrix(g, "cba")


def test_substitute_line_221():
    rel = shift_relation((2, 2, 1))
    R, Q = substitute_line(rel, (0, Fraction(1, 3), Fraction(5, 6)), (2, 2, 1), z0=Fraction(-1, 8))
    assert Q.is_zero()
    assert R.leading_ratio() == AlgNum(Fraction(16, 27))
    assert R.eval_at(Fraction(1)) == AlgNum(Fraction(16, 27) * Fraction(11, 6) / Fraction(5, 3))
    # generic z: numerator of Q carries (c+t) and the (8z+1)t^2 cofactor
    _, Qz = substitute_line(rel, (None, None, None), (2, 2, 1))
    fac = sympy.factor_list(Qz.num.as_expr())
    names = [str(f) for f, _ in fac[1]]
    assert any(n in ("c + t", "t + c") for n in names)


def test_substitute_at_zero_recovers_relation():
    rel = shift_relation((1, 0, 1))
    R, Q = substitute_line(rel, (Fraction(1, 3), Fraction(1, 5), Fraction(1, 7)), (1, 0, 1),
                           z0=Fraction(1, 9))
    expect = rel.R.to_sympy().subs(dict(zip(SYMS, (sympy.Rational(1, 3), sympy.Rational(1, 5),
                                                  sympy.Rational(1, 7), sympy.Rational(1, 9)))))
    assert R.eval_at(0) == AlgNum(expect)


def test_shift_vector_parse():
    assert tuple(ShiftVector.parse("2,2,1")) == (2, 2, 1)
    assert tuple(ShiftVector.parse("(-1,2,1)")) == (-1, 2, 1)
