"""The built-in identities: classical evaluations, resonant closed forms and the
Γ-evaluations attached to admissible quadruples.

Where a printed constant turned out wrong under numerical checking, the entry
carries the corrected form and a ``note`` saying what changed.
"""
from __future__ import annotations

from fractions import Fraction as Fr

import sympy

from ..algebra import AlgNum
from ..numerics.expr import (Cis, Const, Gamma, Lin, Linear, Param, Power, Product, Reciprocal,
                             Sum, Trig, gamma_ratio)
from .entry import CatalogEntry, PolyCorrection, ZParameter

I = sympy.I
S3 = sympy.sqrt(3)
S2 = sympy.sqrt(2)
half = Fr(1, 2)


def L(mu, nu=0) -> Lin:
    return Lin(Fr(mu), Fr(nu))


def K(v) -> Const:
    if isinstance(v, Fr):
        v = sympy.Rational(v.numerator, v.denominator)
    # canonical radical form, so the stored text re-parses to the same expression
    return Const(AlgNum(sympy.expand(sympy.radsimp(sympy.sympify(v)))))


def pw(base, mu, nu=0, branch=None) -> Power:
    return Power(K(base), L(mu, nu), branch)


def gq(num, den) -> Product:
    """Γ-quotient; arguments are Lin or rational constants."""
    return gamma_ratio(list(num), list(den))


def prod(*fs) -> Product:
    return Product(tuple(fs))


def line(a, b, c) -> tuple:
    def as_lin(v):
        return v if isinstance(v, Lin) else L(0, v)
    return tuple(as_lin(v) for v in (a, b, c))


def _classical() -> list:
    out = []
    # Gauss at z = 1
    out.append(CatalogEntry(
        "gauss-at-1", line(L(1, Fr(1, 3)), Fr(1, 5), L(2, 2)), AlgNum(1),
        gq([L(2, 2), L(1, Fr(22, 15))], [L(1, Fr(5, 3)), L(2, Fr(9, 5))]),
        validity="Re(c-a-b) > 0"))
    out.append(CatalogEntry(
        "gauss-at-1-fixed", line(Fr(1, 3), Fr(1, 5), 2), AlgNum(1),
        gq([2, Fr(22, 15)], [Fr(5, 3), Fr(9, 5)]), validity="Re(c-a-b) > 0"))
    # Kummer at z = -1: F(a, b, 1+a-b | -1) with a = 1/2 + t, b = 1/4
    out.append(CatalogEntry(
        "kummer-at-minus-1", line(L(1, half), Fr(1, 4), L(1, Fr(5, 4))), AlgNum(-1),
        gq([L(1, Fr(5, 4)), L(half, Fr(5, 4))], [L(1, Fr(3, 2)), L(half, 1)])))
    # Gauss's second theorem at 1/2: F(2a, 2b, a+b+1/2 | 1/2) with a = t, b = 1/3
    out.append(CatalogEntry(
        "gauss-at-half", line(L(2), Fr(2, 3), L(1, Fr(5, 6))), AlgNum(half),
        gq([half, L(1, Fr(5, 6))], [L(1, half), Fr(5, 6)])))
    # Bailey: F(a, 1-a, c | 1/2) with a = 1/3 + t, c = 5/4
    out.append(CatalogEntry(
        "bailey-at-half", line(L(1, Fr(1, 3)), L(-1, Fr(2, 3)), Fr(5, 4)), AlgNum(half),
        gq([Fr(5, 8), Fr(9, 8)], [L(half, Fr(19, 24)), L(-half, Fr(23, 24))])))
    # F(2a+1, b, 2b | 2) with a = -t, b = 1/3, upper branch
    out.append(CatalogEntry(
        "quadratic-at-2", line(L(-2, 1), Fr(1, 3), Fr(2, 3)), AlgNum(2),
        prod(gq([L(1), Fr(5, 6)], [L(1, Fr(1, 3)), half]),
             Sum((K(half), Product((K(-half), Cis(L(-2)))))),
             ),
        validity="t not in Z<=0; z = 2 + i0",
        note="periodic factor is (1 - e^{2 pi i a})/2; the sign-reversed form fails numerically"))
    # Bateman at -1/3 with a = t
    out.append(CatalogEntry(
        "bateman-at-minus-third", line(L(-1), L(-1, half), L(2, Fr(3, 2))), AlgNum(Fr(-1, 3)),
        prod(pw(Fr(64, 81), 1), gq([L(2, Fr(3, 2)), Fr(4, 3)], [L(2, Fr(4, 3)), Fr(3, 2)])),
        note="second parameter is 1/2 - a; with a + 1/2 the identity fails numerically"))
    return out


def _resonant() -> list:
    out = []
    l_, m_ = 3, 2
    z = AlgNum(Fr(m_, l_))
    out.append(CatalogEntry(
        "resonant-F(2,1+lt,2+mt|m/l)-(3,2)", line(2, L(l_, 1), L(m_, 2)), z,
        prod(K(Fr(l_, l_ - m_)), Linear(L(m_, 1))), source="resonant",
        note="instance of F(2,r,s|(s-2)/(r-1)) = (r-1)(s-1)/(r-s+1)"))
    out.append(CatalogEntry(
        "resonant-F(2,1+lt,2+mt|m/l)-(1,3)", line(2, L(1, 1), L(3, 2)), AlgNum(3),
        prod(K(Fr(1, -2)), Linear(L(3, 1))), source="resonant", validity="z = 3 + i0"))
    out.append(CatalogEntry(
        "resonant-F(-1,lt,mt|m/l)-(3,2)", line(-1, L(l_), L(m_)), z, K(0), source="resonant"))
    out.append(CatalogEntry(
        "resonant-F(-1,lt,mt|m/l)-(5,3)", line(-1, L(5), L(3)), AlgNum(Fr(3, 5)), K(0),
        source="resonant"))
    out.append(CatalogEntry(
        "resonant-F(mt,1+(m-l)t,2+mt|m/l)-(3,2)", line(L(m_), L(m_ - l_, 1), L(m_, 2)), z,
        prod(pw(Fr(1, 3), l_ - m_), Linear(L(m_, 1))), source="resonant"))
    out.append(CatalogEntry(
        "resonant-F(mt+1,(m-l)t,mt|m/l)-(3,2)", line(L(m_, 1), L(m_ - l_), L(m_)), z, K(0),
        source="resonant"))
    # Bailey with integral a = 3: F(3, -2, t | 1/2)
    out.append(CatalogEntry(
        "resonant-bailey-a=3", line(3, -2, L(1)), AlgNum(half),
        gq([L(half), L(half, half)], [L(half, Fr(3, 2)), L(half, -1)]), source="resonant"))
    # Kummer with integral a = 2: F(2, t, t-1 | -1)
    out.append(CatalogEntry(
        "resonant-kummer-a=2", line(2, L(1), L(1, -1)), AlgNum(-1),
        prod(K(half), gq([L(half), L(1, -1)], [L(1), L(half, -1)])), source="resonant"))
    zp = Param("z")
    out.append(CatalogEntry(
        "resonant-F(1+t,1,2|z)", line(L(1, 1), 1, 2), None,
        prod(Sum((Power(Sum((K(1), Product((K(-1), zp)))), L(-1)), K(-1))),
             Reciprocal(Linear(L(1))), Reciprocal(zp)),
        source="resonant",
        z_param=ZParameter("z", (AlgNum(half), AlgNum(-3), AlgNum(Fr(1, 3) + 2 * I / 3))),
        note="the closed form is ((1-z)^{-t} - 1)/(t z)"))
    out.append(CatalogEntry(
        "resonant-F(1+t,1,2|3)", line(L(1, 1), 1, 2), AlgNum(3),
        prod(Sum((pw(-2, -1, 0, branch=-1), K(-1))), Reciprocal(Linear(L(1))), K(Fr(1, 3))),
        source="resonant", validity="z = 3 + i0, so 1 - z = -2 - i0"))
    for b in (1, 2):
        out.append(CatalogEntry(
            f"resonant-F(1-2t,b,2b|2)-b={b}", line(L(-2, 1), b, 2 * b), AlgNum(2),
            prod(gq([L(1), b + half], [L(1, b), half]),
                 Sum((K(half), Product((K(-half), Cis(L(-2))))))),
            source="resonant", validity="t not in Z<=0; z = 2 + i0",
            note="periodic factor is (1 - e^{-2 pi i t})/2"))
    return out


def _sample() -> list:
    out = []
    # (1,3,2) at e^{pi i/3}
    z132 = AlgNum(half + S3 * I / 2)
    drop132 = -S3 * I / 2 * (half + S3 * I / 2)
    out.append(CatalogEntry(
        "sample-(1,3,2)", line(L(1), L(3, -1), L(2)), z132,
        prod(K(-S3 * I / 2), Cis(L(half, Fr(1, 3))), pw(4 / sympy.sqrt(27), 1),
             gq([L(1, half), Fr(1, 3)], [L(1, Fr(1, 3)), half])),
        source="sample", shift=(1, 3, 2),
        polynomial_correction=(PolyCorrection(Fr(0), K(1 / drop132), "t in Z<=0: drop -sqrt(-3) e^{pi i/3}/2"),),
        note="the prefactor is -sqrt(-3)/2; a real -sqrt(3)/2 fails numerically"))
    # (2,4,4) at -2 + sqrt(8)
    out.append(CatalogEntry(
        "sample-(2,4,4)", line(L(2), L(4, -half), L(4)), AlgNum(-2 + 2 * S2),
        prod(K(1 / S2), pw(1 + S2, 4),
             gq([L(1, Fr(1, 4)), L(1, Fr(3, 4)), Fr(3, 8), Fr(5, 8)],
                [L(1, Fr(3, 8)), L(1, Fr(5, 8)), Fr(1, 4), Fr(3, 4)])),
        source="sample", shift=(2, 4, 4),
        polynomial_correction=(PolyCorrection(Fr(0), K(S2), "t in Z<=0: multiply by sqrt(2)"),
                               PolyCorrection(Fr(-1, 2), K(-S2), "t in -1/2 + Z<=0: multiply by -sqrt(2)"))))
    # -(1,2,1)
    out.append(CatalogEntry(
        "sample-(-1,2,1)-c=4/3", line(L(-1), L(2, 1), L(1, Fr(4, 3))), AlgNum(Fr(1, 9)),
        prod(pw(Fr(3, 4), 1), gq([Fr(7, 6), L(1, Fr(4, 3))], [Fr(4, 3), L(1, Fr(7, 6))])),
        source="sample", shift=(-1, 2, 1)))
    out.append(CatalogEntry(
        "sample-(-1,2,1)-c=5/3", line(L(-1), L(2, 2), L(1, Fr(5, 3))), AlgNum(Fr(1, 9)),
        prod(pw(Fr(3, 4), 1), gq([Fr(3, 2), L(1, Fr(5, 3))], [Fr(5, 3), L(1, Fr(3, 2))])),
        source="sample", shift=(-1, 2, 1)))
    # (-2,4,2)
    z0 = (3 + 2 * S3) / 9
    z1 = (3 - 2 * S3) / 9
    cos12 = (sympy.sqrt(6) + S2) / 4
    g43 = gq([L(1, Fr(2, 3)), L(1, Fr(7, 6)), Fr(3, 4), Fr(13, 12)],
             [L(1, Fr(3, 4)), L(1, Fr(13, 12)), Fr(2, 3), Fr(7, 6)])
    g53 = gq([L(1, Fr(4, 3)), L(1, Fr(5, 6)), Fr(5, 4), Fr(11, 12)],
             [L(1, Fr(5, 4)), L(1, Fr(11, 12)), Fr(4, 3), Fr(5, 6)])
    for cname, params, gam, shift_sign in (
            ("4/3", line(L(-2), L(4, 1), L(2, Fr(4, 3))), g43, Fr(-1, 12)),
            ("5/3", line(L(-2), L(4, 2), L(2, Fr(5, 3))), g53, Fr(1, 12))):
        out.append(CatalogEntry(
            f"sample-(-2,4,2)-c={cname}-z0", params, AlgNum(z0),
            prod(pw(sympy.radsimp(-27 * z1 / 16), 1), Trig("cos", L(1, shift_sign)),
                 K(1 / cos12), gam),
            source="sample", shift=(-2, 4, 2)))
        out.append(CatalogEntry(
            f"sample-(-2,4,2)-c={cname}-z1", params, AlgNum(z1),
            prod(pw(sympy.radsimp(27 * z0 / 16), 1), gam),
            source="sample", shift=(-2, 4, 2)))
    # -(1,-1,1)
    out.append(CatalogEntry(
        "sample-(-1,-1,1)", line(L(-1), L(-1, Fr(1, 3)), L(1, Fr(4, 3))), AlgNum(Fr(-1, 8)),
        prod(pw(Fr(27, 32), 1), gq([L(1, Fr(4, 3)), Fr(7, 6)], [L(1, Fr(7, 6)), Fr(4, 3)])),
        source="sample", shift=(-1, -1, 1)))
    # (-2,-2,2)
    out.append(CatalogEntry(
        "sample-(-2,-2,2)", line(L(-2), L(-2, Fr(1, 3)), L(2, Fr(4, 3))), AlgNum((3 * S3 - 5) / 4),
        prod(pw(81 * S3 / 128, 1), g43), source="sample", shift=(-2, -2, 2)))
    # (0,1,3)
    out.append(CatalogEntry(
        "sample-(0,1,3)", line(half, L(1), L(3, -1)), AlgNum(Fr(3, 4)),
        prod(K(Fr(1, 3)), gq([L(1, Fr(1, 3)), L(1, Fr(-1, 3)), Fr(1, 6), Fr(-1, 6)],
                             [L(1, Fr(1, 6)), L(1, Fr(-1, 6)), Fr(1, 3), Fr(-1, 3)])),
        source="sample", shift=(0, 1, 3),
        polynomial_correction=(PolyCorrection(Fr(0), K(3), "t in Z<=0: drop the factor 1/3"),)))
    # (1,3,1) at 4
    out.append(CatalogEntry(
        "sample-(1,3,1)", line(L(1), L(3, Fr(-3, 2)), L(1, half)), AlgNum(4),
        prod(K(6), Cis(L(2)), Trig("cos", L(1)), pw(Fr(1, 27), 1),
             gq([L(1, half), L(1, -half)], [L(1, Fr(-1, 6)), L(1, Fr(1, 6))])),
        source="sample", shift=(1, 3, 1), validity="z = 4 + i0"))
    # (-1,3,2)
    out.append(CatalogEntry(
        "sample-(-1,3,2)-z=1/4", line(L(-1), L(3, 1), L(2, Fr(3, 2))), AlgNum(Fr(1, 4)),
        prod(pw(Fr(16, 27), 1), gq([L(1, Fr(5, 4)), L(1, Fr(3, 4)), Fr(7, 6), Fr(2, 3)],
                                   [L(1, Fr(7, 6)), L(1, Fr(2, 3)), Fr(5, 4), Fr(3, 4)])),
        source="sample", shift=(-1, 3, 2)))
    out.append(CatalogEntry(
        "sample-(-1,3,2)-z=-1/8", line(L(-1), L(3, 2), L(2, Fr(9, 4))), AlgNum(Fr(-1, 8)),
        prod(pw(Fr(32, 27), 1), gq([L(1, Fr(13, 8)), L(1, Fr(9, 8)), Fr(4, 3), Fr(17, 12)],
                                   [L(1, Fr(4, 3)), L(1, Fr(17, 12)), Fr(13, 8), Fr(9, 8)])),
        source="sample", shift=(-1, 3, 2)))
    # (3,3,4)
    out.append(CatalogEntry(
        "sample-(3,3,4)-c=2/3", line(L(3), L(3, half), L(4, Fr(2, 3))), AlgNum(Fr(8, 9)),
        prod(pw(108, 1), gq([L(1, Fr(11, 12)), L(1, Fr(5, 12)), half, Fr(5, 6)],
                            [L(1, half), L(1, Fr(5, 6)), Fr(11, 12), Fr(5, 12)])),
        source="sample", shift=(3, 3, 4),
        polynomial_correction=(PolyCorrection(Fr(-1, 6), K(2), "t in -1/6 + Z<=0: multiply by 2"),)))
    corr2 = prod(Power(K(108), L(0, Fr(1, 12))), gq([Fr(5, 6), Fr(7, 12), Fr(7, 12)],
                                                    [half, Fr(3, 4), Fr(3, 4)]))
    out.append(CatalogEntry(
        "sample-(3,3,4)-c=1/3", line(L(3), L(3, Fr(1, 4)), L(4, Fr(1, 3))), AlgNum(Fr(8, 9)),
        prod(pw(108, 1), gq([L(1, Fr(7, 12)), L(1, Fr(5, 6)), Fr(3, 4), Fr(2, 3)],
                            [L(1, Fr(3, 4)), L(1, Fr(2, 3)), Fr(7, 12), Fr(5, 6)])),
        source="sample", shift=(3, 3, 4),
        polynomial_correction=(PolyCorrection(
            Fr(-1, 12), corr2, "t in -1/12 + Z<=0: multiply by 108^{1/12} G(5/6)G(7/12)^2/(G(1/2)G(3/4)^2)"),)))
    tail334 = prod(Cis(L(2)), pw(16, 1), gq([L(1, Fr(1, 4)), L(1, Fr(3, 4)), Fr(1, 6), Fr(2, 3)],
                                             [L(1, Fr(1, 6)), L(1, Fr(2, 3)), Fr(1, 4), Fr(3, 4)]))
    out.append(CatalogEntry(
        "sample-(3,3,4)-z=4/3", line(L(3), L(3, -half), L(4)), AlgNum(Fr(4, 3)),
        prod(K((1 - S3 * I) / 4), tail334),
        source="sample", shift=(3, 3, 4), validity="z = 4/3 + i0",
        polynomial_correction=(PolyCorrection(Fr(0), K(4 / (1 - S3 * I)), "t in Z<=0: drop (1-sqrt(-3))/4"),),
        alternatives=(("sqrt(-3) = i*sqrt(3)", prod(K((1 - S3 * I) / 4), tail334)),
                      ("sqrt(-3) = -i*sqrt(3)", prod(K((1 + S3 * I) / 4), tail334)))))
    # (2,1,0) at -8
    out.append(CatalogEntry(
        "sample-(2,1,0)-c=2/3", line(L(2), L(1, Fr(1, 6)), Fr(2, 3)), AlgNum(-8),
        prod(K(2 / S3), pw(Fr(1, 27), 1), Trig("sin", L(1, Fr(1, 3)))),
        source="sample", shift=(2, 1, 0)))
    out.append(CatalogEntry(
        "sample-(2,1,0)-c=4/3", line(L(2), L(1, Fr(1, 3)), Fr(4, 3)), AlgNum(-8),
        prod(K(2), Trig("cos", L(1, Fr(1, 3))), pw(Fr(1, 27), 1),
             gq([L(1, Fr(-1, 6)), half], [L(1, half), Fr(-1, 6)])),
        source="sample", shift=(2, 1, 0)))
    # (3,1,0)
    out.append(CatalogEntry(
        "sample-(3,1,0)-c=1/2-z=9", line(L(3), L(1, Fr(1, 6)), half), AlgNum(9),
        prod(K(half), pw(Fr(1, 64), 1),
             Sum((K(1), Cis(L(2, Fr(1, 3))), Product((K(-1), Cis(L(4, Fr(2, 3)))))))),
        source="sample", shift=(3, 1, 0), validity="z = 9 + i0"))
    out.append(CatalogEntry(
        "sample-(3,1,0)-c=3/2-z=9", line(L(3), L(1, half), Fr(3, 2)), AlgNum(9),
        prod(K(-1 / (6 * S3)), pw(Fr(1, 64), 1),
             Sum((K(1), Product((K(-1), Cis(L(2)))), Cis(L(4)))),
             gq([L(1, Fr(-1, 6)), L(1, Fr(1, 6))], [L(1, Fr(1, 3)), L(1, Fr(2, 3))])),
        source="sample", shift=(3, 1, 0), validity="z = 9 + i0"))
    out.append(CatalogEntry(
        "sample-(3,1,0)-c=1/2-z=-3", line(L(3), L(1, Fr(1, 6)), half), AlgNum(-3),
        prod(pw(Fr(1, 16), 1), Trig("cos", L(1)), gq([L(1, half), Fr(1, 3)], [L(1, Fr(1, 3)), half])),
        source="sample", shift=(3, 1, 0)))
    out.append(CatalogEntry(
        "sample-(3,1,0)-c=3/2-z=-3", line(L(3), L(1, half), Fr(3, 2)), AlgNum(-3),
        prod(K(2), pw(Fr(1, 16), 1), Trig("cos", L(1, Fr(1, 3))),
             gq([L(1, Fr(-1, 6)), Fr(2, 3)], [L(1, Fr(2, 3)), Fr(-1, 6)])),
        source="sample", shift=(3, 1, 0),
        note="the periodic factor is cos(pi(t+1/3)); cos(pi t) fails numerically"))
    # (1,1,0): classical, stated for a free argument z with LHS at z^2
    zp = Param("z")
    out.append(CatalogEntry(
        "sample-(1,1,0)", line(L(1), L(1, half), half), None,
        prod(K(half), Sum((Power(Sum((K(1), zp)), L(-2)),
                           Power(Sum((K(1), Product((K(-1), zp)))), L(-2))))),
        source="sample", validity="z not in (-inf,-1] or [1,inf)",
        z_param=ZParameter("z", (AlgNum(Fr(1, 3)), AlgNum(Fr(-2, 5)), AlgNum(half + I / 3),
                                 AlgNum(Fr(3, 2) + I)), "z^2"),
        note="no admissible quadruple exists for this shift"))
    return out


def builtin_entries() -> list:
    entries = _classical() + _resonant() + _sample()
    return sorted(entries, key=lambda e: e.id)
