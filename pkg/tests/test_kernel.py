from dataclasses import replace
from fractions import Fraction as Fr

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hypgamma.admissibility import find_quadruple
from hypgamma.algebra import AlgNum, number_field
from hypgamma.catalog import builtin_entries
from hypgamma.contiguity import shift_relation, substitute_line
from hypgamma.errors import SingularSystem
from hypgamma.kernel import (belyi_z0, g_at, kernel_data, r0_from_kernel, r0_prefactor, rhat_from_contiguity,
                             solve_kernel_system)

S3 = sympy.sqrt(3)


def _contiguity_r0(q):
    K = number_field([q.z0, *q.offsets])
    R, _ = substitute_line(shift_relation(q.gamma), q.offsets, q.gamma, z0=q.z0, K=K)
    return R.leading_ratio()


def _point(gamma, z0):
    hits = [p for p in belyi_z0(gamma) if p.z0 == AlgNum(z0)]
    assert hits, f"{z0} missing from the Belyi list of {gamma}"
    return hits[0]


def test_kernel_data_221():
    d = kernel_data((2, 2, 1))
    x, z = sympy.symbols("x z")
    assert sympy.simplify(d.g - x ** 2 / ((1 - x) * (1 - z * x) ** 2)) == 0


@pytest.mark.parametrize("gamma,z0s", [
    ((2, 2, 1), [Fr(-1, 8)]),
    ((3, 1, 0), [Fr(-3), Fr(9)]),
    ((1, 3, 2), [Fr(1, 2) + S3 * sympy.I / 2]),
    ((2, 4, 4), [-2 + 2 * sympy.sqrt(2)]),
    ((-2, 4, 2), [(3 + 2 * S3) / 9, (3 - 2 * S3) / 9]),
])
def test_belyi_contains_known_points(gamma, z0s):
    got = [p.z0 for p in belyi_z0(gamma)]
    for z in z0s:
        assert AlgNum(z) in got


def test_r0_221():
    p = _point((2, 2, 1), Fr(-1, 8))
    assert r0_prefactor((2, 2, 1)) == Fr(-1, 4)
    for x in (p.x1, p.x2):
        assert r0_from_kernel((2, 2, 1), p.z0, x) == AlgNum(Fr(16, 27))


def test_prefactor_zero_power():
    # l = m: the middle factor is 0^0 = 1
    assert r0_prefactor((3, 3, 4)) == Fr(4 ** 4, 27)
    assert r0_prefactor((1, 1, 1)) == Fr(1)


@pytest.mark.parametrize("entry_id", ["sample-(1,3,2)", "sample-(3,1,0)-c=1/2-z=9", "sample-(2,4,4)",
                                      "sample-(3,3,4)-z=4/3", "sample-(-1,3,2)-z=-1/8"])
def test_kernel_r0_matches_contiguity(entry_id):
    e = next(x for x in builtin_entries() if x.id == entry_id)
    q = find_quadruple(e.shift, e.offsets, e.z0)
    p = _point(e.shift, e.z0)
    r_cont = _contiguity_r0(q)
    for x in (p.x1, p.x2):
        r_ker = r0_from_kernel(e.shift, p.z0, x)
        assert (r_ker * r_ker.conjugate()).simplified() == (r_cont * r_cont.conjugate()).simplified()


@pytest.mark.parametrize("gamma,offsets,z0", [
    ((2, 2, 1), (0, Fr(1, 3), Fr(5, 6)), Fr(-1, 8)),
    ((2, 2, 1), (0, Fr(-1, 3), Fr(2, 3)), Fr(-1, 8)),
    ((3, 1, 0), (0, Fr(1, 2), Fr(3, 2)), Fr(9)),
    ((-1, 2, 1), (0, 1, Fr(4, 3)), Fr(1, 9)),
])
def test_rhat_two_routes_agree(gamma, offsets, z0):
    q = find_quadruple(gamma, offsets, AlgNum(z0))
    sol = solve_kernel_system(gamma, q)
    dn, dd = sol.Rhat.degrees()
    assert dn == dd
    assert sol.Rhat == rhat_from_contiguity(q)


def test_non_admissible_input_is_rejected():
    q = find_quadruple((2, 2, 1), (0, Fr(1, 3), Fr(5, 6)), AlgNum(Fr(-1, 8)))
    assert q is not None
    bogus = replace(q, z0=AlgNum(Fr(-1, 7)))
    with pytest.raises(SingularSystem):
        solve_kernel_system((2, 2, 1), bogus)


small = st.integers(min_value=-2, max_value=2)


@settings(max_examples=12)
@given(st.tuples(small, small, small).filter(lambda g: g != (0, 0, 0)))
def test_critical_values_coincide(gamma):
    for p in belyi_z0(gamma):
        if isinstance(p.x1, str) or isinstance(p.x2, str):
            continue
        try:
            assert g_at(gamma, p.z0, p.x1) == g_at(gamma, p.z0, p.x2)
        except ZeroDivisionError:
            pass
