from fractions import Fraction as Fr
from itertools import permutations

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpc

from hypgamma.admissibility import find_quadruple
from hypgamma.algebra import AlgNum
from hypgamma.contiguity import ShiftVector
from hypgamma.symmetry import (apply_word, associates, cycle_text, four_vector_permutation, generator_closure,
                               in_fundamental_domain, inverse_perm, kummer_transforms, normalize_shift, orbit,
                               parse_cycles, row_words, transform_by_cycle)

a_, b_, c_, z_ = sympy.symbols("a b c z")


def test_closure_has_24_elements():
    assert len(generator_closure()) == 24


def test_table_permutations_exhaust_s4():
    perms = {T.perm for T in kummer_transforms()}
    assert len(kummer_transforms()) == 24
    assert perms == set(permutations((1, 2, 3, 4)))


def test_table_permutation_matches_four_vector():
    for T in kummer_transforms():
        assert inverse_perm(four_vector_permutation(T)) == T.perm


def test_every_row_has_a_generator_word():
    words = row_words()
    assert set(words) == set(range(1, 25))
    for T in kummer_transforms():
        for g in [(2, 2, 1), (3, 1, 0), (-1, 4, 2)]:
            assert apply_word(words[T.index], g) == T.apply_shift(g)


def test_cycle_notation_round_trip():
    for T in kummer_transforms():
        assert cycle_text(parse_cycles(T.permutation)) == T.permutation
    assert transform_by_cycle("(34)").index == 9


@pytest.mark.parametrize("row", range(1, 25))
def test_row_solves_hypergeometric_equation(row):
    T = kummer_transforms()[row - 1]
    a, b, c = mpc("0.31", "0.07"), mpc("-0.43"), mpc("1.27", "-0.11")
    lam = sympy.lambdify((a_, b_, c_, z_), sympy.sympify(T.lam.replace("^", "**")), "mpmath")
    h = sympy.lambdify(z_, sympy.sympify(T.h), "mpmath")
    rows = T.new_params

    def prm(r):
        q = [mpmath.mpf(x.numerator) / x.denominator for x in r]
        return q[0] * a + q[1] * b + q[2] * c + q[3]

    def w(z):
        return lam(a, b, c, z) * mpmath.hyp2f1(prm(rows[0]), prm(rows[1]), prm(rows[2]), h(z))

    with mpmath.workdps(40):
        z0 = mpc("0.37", "0.21")
        w0, w1, w2 = (mpmath.diff(w, z0, n) for n in (0, 1, 2))
        res = z0 * (1 - z0) * w2 + (c - (a + b + 1) * z0) * w1 - a * b * w0
        assert abs(res) < mpmath.mpf(10) ** -20 * (abs(w0) + abs(w1) + abs(w2))


def test_all_24_images_of_221_quadruple_are_admissible():
    q = find_quadruple((2, 2, 1), (0, Fr(1, 3), Fr(5, 6)), AlgNum(Fr(-1, 8)))
    images = associates(q, verify=True)
    assert len(images) == 24
    assert {i for i, _ in images} == set(range(1, 25))
    pfaff = dict(images)[13]
    assert pfaff.z0 == AlgNum(Fr(1, 9))


def test_normalize_shift_examples():
    assert normalize_shift((2, 2, 1))[0] == ShiftVector(2, 2, 3)
    rep, row = normalize_shift((3, 1, 0))
    assert in_fundamental_domain(rep)
    assert kummer_transforms()[row - 1].apply_shift((3, 1, 0)) == rep


shift = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)).filter(lambda g: g != (0, 0, 0))


@given(shift)
def test_orbit_representative_is_invariant(g):
    rep = normalize_shift(g)[0]
    assert in_fundamental_domain(rep)
    for member, _ in orbit(g).members:
        assert normalize_shift(member)[0] == rep


@given(shift)
def test_group_action_is_closed(g):
    images = {tuple(T.apply_shift(g)) for T in kummer_transforms()}
    for T in kummer_transforms():
        for h in list(images):
            assert tuple(T.apply_shift(h)) in images
