from fractions import Fraction as Fr

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpc, mpf

from hypgamma.errors import BranchUnspecified, CNonPositiveInteger, DivergentAtOne, PoleOfGamma
from hypgamma.numerics import (ComplexBall, Const, Gamma, Lin, Power, Product, Reciprocal, T, Trig, eval_expr,
                               euler_oracle, gamma_c, hyp2f1, parse_ball)
from hypgamma.numerics.hyp2f1 import choose_route

mpmath.mp.prec = 160


def close(ball, value, rel):
    value = mpc(value)
    return abs(ball.mid - value) <= rel * max(abs(value), mpf(1)) + ball.rad


# ------------------------------------------------------------------ balls

def test_ball_arithmetic_contains_exact():
    x = ComplexBall(mpc(1, 2), mpf("1e-10"))
    y = ComplexBall(mpc(-3, 0.5), mpf("1e-12"))
    for op, ex in ((x * y, mpc(1, 2) * mpc(-3, 0.5)), (x / y, mpc(1, 2) / mpc(-3, 0.5)),
                   (x + y, mpc(-2, 2.5)), (x - y, mpc(4, 1.5))):
        assert op.contains(ex)


def test_ball_string_round_trip():
    b = ComplexBall(mpc("1.25", "-0.5"), mpf("3e-20"))
    c = parse_ball(b.to_string(30))
    assert c.contains(b.mid) and c.rad >= b.rad


def test_ball_pole_detection():
    assert ComplexBall(mpc(-2, 0), mpf("0.01")).contains_integer_leq0()
    assert not ComplexBall(mpc(-2.5, 0), mpf("0.01")).contains_integer_leq0()


# ------------------------------------------------------------------ gamma

def test_gamma_half():
    assert close(gamma_c(mpf(1) / 2, 128), mpmath.sqrt(mpmath.pi), mpf(2) ** -118)


@given(st.floats(-8, 8), st.floats(-15, 15))
def test_gamma_matches_mpmath(re, im):
    s = mpc(re, im)
    if im == 0 and re <= 0 and re == int(re):
        return
    v = gamma_c(s, 128)
    with mpmath.workprec(200):
        ref = mpmath.gamma(s)
    assert abs(v.mid - ref) <= abs(ref) * mpf(2) ** -115 + v.rad


def test_gamma_pole():
    with pytest.raises(PoleOfGamma):
        gamma_c(-3, 64)


def test_gamma_asymptotic_decay():
    # |Γ(a+ib)| ~ √(2π) |b|^{a-1/2} e^{-π|b|/2}
    for a in (mpf(1) / 2, mpf(1), mpf(5) / 2):
        b = mpf(20)
        v = abs(gamma_c(mpc(a, b), 128).mid)
        approx = mpmath.sqrt(2 * mpmath.pi) * b ** (a - mpf(1) / 2) * mpmath.exp(-mpmath.pi * b / 2)
        assert abs(v / approx - 1) < 0.01


def test_gamma_ratio_family_221_constant():
    with mpmath.workprec(240):
        x, y = mpf(2) / 3, mpf(5) / 6
        ref = mpmath.gamma(x) / mpmath.gamma(y)
        r = gamma_c(x, 192) / gamma_c(y, 192)
        assert r.contains(ref)
        assert abs(r.mid - ref) < mpf(10) ** -50


# ------------------------------------------------------------------ hyp2f1

def test_hyp2f1_at_zero_and_one():
    assert hyp2f1(0.3, 0.7, 1.9, 0, 128).mid == 1
    a, b, c = mpf(1) / 3, mpf(1) / 5, mpf(2)
    v = hyp2f1(a, b, c, 1, 160)
    with mpmath.workprec(200):
        ref = mpmath.gamma(c) * mpmath.gamma(c - a - b) / (mpmath.gamma(c - a) * mpmath.gamma(c - b))
    assert abs(v.mid - ref) < mpf(10) ** -40


def test_hyp2f1_errors():
    with pytest.raises(CNonPositiveInteger):
        hyp2f1(0.5, 0.5, -2, 0.3, 64)
    with pytest.raises(DivergentAtOne):
        hyp2f1(1, 1, 1.5, 1, 64)


@pytest.mark.parametrize("z", [mpc(0.3, 0.1), mpc(-2.5, 0.4), mpc(0.5, 0.866), mpc(3, -1), mpc(-0.9, 0)])
def test_hyp2f1_matches_mpmath(z):
    a, b, c = mpc(0.3, 0.2), mpf(1.7), mpc(2.4, -0.1)
    v = hyp2f1(a, b, c, z, 128)
    with mpmath.workprec(200):
        ref = mpmath.hyp2f1(a, b, c, z)
    assert abs(v.mid - ref) <= abs(ref) * mpf(10) ** -30 + v.rad


def test_upper_branch_convention():
    a, b, c, x = mpf(0.3), mpf(0.45), mpf(1.2), mpf(4)
    up = hyp2f1(a, b, c, x, 128, branch="upper")
    with mpmath.workprec(200):
        ref = mpmath.hyp2f1(a, b, c, mpc(x, mpf(10) ** -45))
    assert abs(up.mid - ref) < mpf(10) ** -30


def test_family_310_at_9_value():
    t = mpf(1) / 4
    v = hyp2f1(3 * t, t + mpf(1) / 6, mpf(1) / 2, 9, 128)
    e = lambda x: mpmath.expjpi(2 * x)  # noqa: E731
    ref = (1 + e(t + mpf(1) / 6) - e(2 * (t + mpf(1) / 6))) / (2 * mpf(64) ** t)
    assert abs(v.mid - ref) < mpf(10) ** -30


off_axis = st.tuples(st.floats(1.2, 3.0), st.floats(0.15, 3.0), st.booleans())
param = st.floats(-2.5, 2.5)


@settings(max_examples=10)
@given(param, param, st.floats(0.3, 3.0), off_axis)
def test_route_independence(a, b, c, zspec):
    r, th, flip = zspec
    th = th if not flip else -th
    z = mpmath.rect(r, th)
    with mpmath.workprec(160):
        route = choose_route(mpc(a), mpc(b), mpc(c), z, 160)
    if route is None:
        return
    v1 = hyp2f1(a, b, c, z, 96, method=route)
    v2 = hyp2f1(a, b, c, z, 96, method="ode")
    assert v1.overlaps(v2)


@given(st.floats(0.1, 2.0), st.floats(0.1, 2.0), st.floats(0.1, 3.0), st.floats(0.1, 3.0))
def test_lower_branch_is_conjugate(a, b, c, x):
    x = 1 + x
    up = hyp2f1(a, b, c, x, 96, branch="upper")
    lo = hyp2f1(a, b, c, x, 96, branch="lower")
    assert lo.overlaps(up.conjugate())


def test_input_radius_containment():
    base = ComplexBall(mpc(0.4, 0.1), mpf("1e-20"))
    wide = hyp2f1(mpf(1) / 3, mpf(2) / 5, mpf(7) / 4, base, 96)
    narrow = hyp2f1(mpf(1) / 3, mpf(2) / 5, mpf(7) / 4, ComplexBall(base.mid, base.rad / 2), 96)
    assert wide.contains(narrow.mid)


# ------------------------------------------------------------------ Euler oracle

def test_euler_oracle_in_range():
    a, b, c, z = mpf(1) / 3, mpf(1) / 2, mpf(3) / 2, mpf(1) / 4
    o = euler_oracle(a, b, c, z, 128)
    s = hyp2f1(a, b, c, z, 128)
    assert abs(o.mid - s.mid) < mpf(10) ** -25


def test_euler_oracle_kummer_at_minus_one():
    a, b = mpf(1) / 2, mpf(1) / 4
    o = euler_oracle(a, b, a - b + 1, -1, 128)
    g = mpmath.gamma
    with mpmath.workprec(200):
        ref = g(1 + a - b) * g(1 + a / 2) / (g(1 + a) * g(1 + a / 2 - b))
    assert abs(o.mid - ref) < mpf(10) ** -25


def test_euler_oracle_above_cut():
    # the (1,3,1) line at t = 0.3 with z = 4 on the upper side
    t = mpf(3) / 10
    a, b, c = t, 3 * t - mpf(3) / 2 + 2, t + mpf(1) / 2 + 1
    o = euler_oracle(a, b, c, 4, 128)
    s = hyp2f1(a, b, c, 4, 128)
    assert abs(o.mid - s.mid) < mpf(10) ** -20


# ------------------------------------------------------------------ expression trees

def test_expr_constant():
    assert eval_expr(Const(Fr(64, 27)), mpf(0.37), 128).contains(mpf(64) / 27)


def test_expr_family_221_at_zero():
    e = Product((Power(Const(Fr(16, 27)), T), Gamma(T + Fr(5, 6)), Gamma(Lin(0, Fr(2, 3))),
                 Reciprocal(Gamma(T + Fr(2, 3))), Reciprocal(Gamma(Lin(0, Fr(5, 6))))))
    assert eval_expr(e, 0, 128).contains(1)


def test_expr_cosine_zero():
    e = Product((Trig("cos", T), Reciprocal(Power(Const(16), T)), Gamma(T + Fr(1, 2)), Gamma(Lin(0, Fr(1, 3))),
                 Reciprocal(Gamma(T + Fr(1, 3))), Reciprocal(Gamma(Lin(0, Fr(1, 2))))))
    assert eval_expr(e, mpf(1) / 2, 128).contains(0)


def test_expr_branch_needed():
    with pytest.raises(BranchUnspecified):
        eval_expr(Power(Const(-27), T), mpf(0.3), 64)
    v = eval_expr(Power(Const(-27), T, 0), mpf(1) / 3, 64)
    assert abs(v.mid - 3 * mpmath.expjpi(mpf(1) / 3)) < mpf(10) ** -15
