from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hypgamma.algebra import (RING, AlgNum, RatFunc, a, algnum_roots, b, c, poly_collect,
                              poly_from_text, poly_to_text, ratfunc_normalize, t, z)
from hypgamma.errors import DegreeTooHigh, ZeroDenominator

small = st.integers(-3, 3)
gens = [a, b, c, z, t]


@st.composite
def polys(draw, max_terms=4):
    p = RING.zero
    for _ in range(draw(st.integers(0, max_terms))):
        term = RING(draw(small))
        for g in gens:
            term *= g ** draw(st.integers(0, 2))
        p += term
    return p


def test_collect_examples():
    p = poly_from_text("(8*z+1)*t^2 + t")
    assert poly_collect(p, "t") == [RING.zero, RING.one, 8 * z + 1]
    assert poly_collect(RING.zero, "t") == []
    assert poly_collect(a * t + a, "t") == [a, a]


def test_normalize_examples():
    assert ratfunc_normalize(RatFunc.raw(2 * a, RING(2))) == RatFunc(a)
    f = ratfunc_normalize(RatFunc.raw((z - 1) ** 2 * c, z - 1))
    assert f.num == c * (z - 1) and f.den == RING.one
    with pytest.raises(ZeroDenominator):
        RatFunc(a, RING.zero)


@given(polys(), polys(), polys())
def test_ring_distributive(p, q, r):
    assert (p + q) * r == p * r + q * r


@given(polys(), polys())
def test_text_roundtrip(p, q):
    assert poly_from_text(poly_to_text(p)) == p
    if q:
        f = RatFunc(p, q)
        assert RatFunc.from_text(f.to_text()) == f


@given(polys(3), polys(3), polys(3))
def test_ratfunc_field_ops(p, q, r):
    if not q or not r:
        return
    f, g = RatFunc(p, q), RatFunc(q, r)
    assert (f * g) / g == f
    assert (f + g) - g == f
    assert RatFunc(p * r, q * r) == f  # normalized form is canonical


def test_algnum_roots_examples():
    roots = [r for r, _ in algnum_roots(8 * z + 1)]
    assert roots == [AlgNum(Fraction(-1, 8))]
    roots = [r for r, _ in algnum_roots(z ** 2 - 2)]
    assert sorted(complex(r).real for r in roots) == pytest.approx([-1.41421356, 1.41421356])
    roots = [r for r, _ in algnum_roots(81 * z ** 2 - 54 * z - 3)]
    assert sorted(complex(r).real for r in roots) == pytest.approx([-0.0515668, 0.7182335], abs=1e-6)
    s3 = sympy.sqrt(3)
    assert AlgNum((3 + 2 * s3) / 9) in roots and AlgNum((3 - 2 * s3) / 9) in roots


def test_algnum_degree_ceiling():
    with pytest.raises(DegreeTooHigh):
        algnum_roots(z ** 5 - z - 1)
    assert len(algnum_roots(z ** 3 - 2)) == 3


def test_algnum_exact_equality():
    s2 = sympy.sqrt(2)
    assert AlgNum(-2 + 2 * s2) == AlgNum(-2 + sympy.sqrt(8))
    assert AlgNum(s2) != AlgNum(-s2)
    assert AlgNum(s2).minpoly.degree() == 2
    x = AlgNum(sympy.Rational(1, 2) + sympy.sqrt(3) * sympy.I / 2)
    assert (x * x * x) == AlgNum(-1)
