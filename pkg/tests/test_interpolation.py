from fractions import Fraction as Fr

import mpmath
import pytest
import sympy
from mpmath import mpc, mpf

from hypgamma.admissibility import find_quadruple
from hypgamma.algebra import AlgNum, UniRat
from hypgamma.errors import UnequalDegrees
from hypgamma.interpolation import (RecognizedConstant, check_identity, factor_R, gamma_quotient_at_zero,
                                    interpolate, pole_bound_values, pole_bounds, recognize_constants)
from hypgamma.numerics import ComplexBall, eval_expr

t = sympy.Symbol("t")
Q = sympy.QQ


def unirat(num, den):
    return UniRat(sympy.Poly(num, t, domain=Q), sympy.Poly(den, t, domain=Q))


def quad(gamma, offsets, z0):
    q = find_quadruple(gamma, offsets, AlgNum(z0))
    assert q is not None
    return q


FAMILY_221 = ((2, 2, 1), (0, Fr(1, 3), Fr(5, 6)), Fr(-1, 8))
FAMILY_310_M3 = ((3, 1, 0), (0, Fr(1, 6), Fr(1, 2)), Fr(-3))
FAMILY_310_9 = ((3, 1, 0), (0, Fr(1, 6), Fr(1, 2)), Fr(9))


@pytest.mark.parametrize("num,den,r0,alphas,deltas", [
    (sympy.Rational(16, 27) * (t + sympy.Rational(5, 6)), t + sympy.Rational(2, 3), Fr(16, 27), [Fr(5, 6)], [Fr(2, 3)]),
    (-(t + sympy.Rational(1, 2)), 16 * (t + sympy.Rational(1, 3)), Fr(-1, 16), [Fr(1, 2)], [Fr(1, 3)]),
    (sympy.Integer(1), sympy.Integer(64), Fr(1, 64), [], []),
])
def test_factor_R(num, den, r0, alphas, deltas):
    R0, a, d = factor_R(unirat(num, den))
    assert R0 == AlgNum(r0)
    assert [x.to_fraction() for x in a] == alphas
    assert [x.to_fraction() for x in d] == deltas


def test_factor_R_unequal_degrees():
    with pytest.raises(UnequalDegrees):
        factor_R(unirat(t + 1, sympy.Integer(3)))


@pytest.mark.parametrize("data,r0,expected,values", [
    (FAMILY_221, Fr(16, 27), (0, 0), (Fr(1, 2), Fr(1, 2))),
    (FAMILY_310_M3, Fr(-1, 16), (1, 0), (Fr(1), Fr(0))),
    (FAMILY_310_9, Fr(1, 64), (2, 2), (Fr(2), Fr(2))),
])
def test_pole_bounds(data, r0, expected, values):
    q = quad(*data)
    assert pole_bounds(q, AlgNum(r0)) == expected
    got = pole_bound_values(q, AlgNum(r0))
    for g, v in zip(got, values):
        assert abs(g - mpf(v.numerator) / v.denominator) < mpf(10) ** -30


def test_family_221_end_to_end():
    ev = interpolate(quad(*FAMILY_221), 192)
    assert ev.R0 == AlgNum(Fr(16, 27))
    assert [a.to_fraction() for a in ev.alphas] == [Fr(5, 6)]
    assert [d.to_fraction() for d in ev.deltas] == [Fr(2, 3)]
    assert ev.pole_bounds == (0, 0)
    assert set(ev.laurent) == {0}
    c = ev.laurent[0]
    assert isinstance(c, RecognizedConstant) and c.multiplier == "gamma"
    assert c.cyclotomic_part() == AlgNum(1)
    errs = check_identity(ev, [mpf(0.3), mpc(-0.7, 0.2), mpf(1.9), mpc(0.45, -0.9), mpc(-1.6, 0.5)], 192)
    assert max(errs) < mpf(10) ** -30
    assert ev.verified_fresh


def test_family_310_at_m3_two_coefficients():
    ev = interpolate(quad(*FAMILY_310_M3), 192)
    assert ev.pole_bounds == (1, 0)
    assert set(ev.laurent) == {-1, 0}
    for j in (-1, 0):
        c = ev.laurent[j]
        assert c.multiplier == "gamma" and c.cyclotomic_part() == AlgNum(Fr(1, 2))
    # the Γ-quotient multiplier is Γ(1/3)/Γ(1/2)
    gq = gamma_quotient_at_zero(ev.alphas, ev.deltas)
    with mpmath.workprec(200):
        ref = mpmath.gamma(mpf(1) / 3) / mpmath.gamma(mpf(1) / 2)
    assert abs(eval_expr(gq, 0, 160).mid - ref) < mpf(10) ** -40


def test_family_310_at_9_laurent_fit():
    ev = interpolate(quad(*FAMILY_310_9), 192)
    assert ev.R0 == AlgNum(Fr(1, 64)) and not ev.alphas and not ev.deltas
    assert ev.pole_bounds == (2, 2)
    w = sympy.exp(sympy.pi * sympy.I / 3)
    want = {-2: 0, -1: 0, 0: sympy.Rational(1, 2), 1: w / 2, 2: -w ** 2 / 2}
    assert set(ev.laurent) == set(want)
    for j, v in want.items():
        assert ev.laurent[j].algebraic_value() == AlgNum(sympy.expand(sympy.expand_complex(v)))


def test_laurent_support_within_bounds():
    for data in (FAMILY_221, FAMILY_310_M3, FAMILY_310_9):
        ev = interpolate(quad(*data), 160)
        p0, pinf = ev.pole_bounds
        assert all(-p0 <= j <= pinf for j in ev.laurent)


def test_recognize_root_of_unity():
    with mpmath.workprec(200):
        v = mpmath.expjpi(mpf(1) / 3)
    rec = recognize_constants({0: ComplexBall(v, mpf(10) ** -55)}, 6, gamma_quotient_at_zero([], []), 192)
    c = rec[0]
    assert isinstance(c, RecognizedConstant)
    assert c.algebraic_value() == AlgNum(sympy.Rational(1, 2) + sympy.sqrt(3) * sympy.I / 2)


def test_gamma_ratio_alone_stays_numeric_without_template():
    # Γ(2/3)/Γ(5/6) is not cyclotomic: with an empty Γ template it must not be "recognized"
    with mpmath.workprec(200):
        v = mpmath.gamma(mpf(2) / 3) / mpmath.gamma(mpf(5) / 6)
    rec = recognize_constants({0: ComplexBall(mpc(v), mpf(10) ** -55)}, 6, gamma_quotient_at_zero([], []), 192)
    assert isinstance(rec[0], ComplexBall)


def test_negative_m_uses_flipped_line():
    # (-1,-1,1) has m > 0 already; its negative has m < 0 and must still interpolate
    q = quad((1, 1, -1), (0, Fr(1, 3), Fr(4, 3)), Fr(-1, 8))
    ev = interpolate(q, 160)
    assert ev.sign == -1
    errs = check_identity(ev, [mpf(0.3), mpc(-0.7, 0.2)], 160)
    assert max(errs) < mpf(10) ** -30
