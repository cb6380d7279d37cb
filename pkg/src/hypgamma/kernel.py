"""Euler-kernel side: the Belyi condition for z₀, R₀ from g_γ, and the linear system for R̂(t).

With K(β,z,x) = x^{b-1}(1-x)^{c-b-1}(1-zx)^{-a} and
g_γ(z,x) = x^l (1-x)^{m-l} (1-zx)^{-k} = n_γ/d_γ, shifting t by one multiplies
the kernel by g_γ.  The logarithmic derivative of g_γ gives
q₀(x) = l(1-x)(1-zx) - (m-l)x(1-zx) + kzx(1-x), a quadratic whose two zeros
x₁, x₂ must satisfy g_γ(z₀,x₁) = g_γ(z₀,x₂) at an admissible argument.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy

from .algebra import DEFAULT_DEGREE_CEILING, AlgNum, UniRat, algnum_roots, as_algnum, number_field, to_field
from .contiguity import ShiftVector, shift_relation, substitute_line
from .errors import SingularSystem, UnequalDegrees

X, Y, Zs, Ts = sympy.symbols("x y z t")


def _pos(v: int) -> int:
    return v if v > 0 else 0


@dataclass(frozen=True)
class KernelData:
    gamma: ShiftVector
    n: sympy.Expr  # numerator of g in (z, x)
    d: sympy.Expr  # denominator of g in (z, x)
    q0: sympy.Expr

    @property
    def g(self):
        return self.n / self.d

    def q_coeffs(self):
        """(constant, x, x²) coefficients of q₀ as expressions in z."""
        P = sympy.Poly(self.q0, X)
        c = P.all_coeffs()[::-1] + [0, 0, 0]
        return c[0], c[1], c[2]


def kernel_data(gamma, x=X, z=Zs) -> KernelData:
    k, l, m = ShiftVector.parse(gamma)
    n = x ** _pos(l) * (1 - x) ** _pos(m - l) * (1 - z * x) ** _pos(-k)
    d = x ** _pos(-l) * (1 - x) ** _pos(l - m) * (1 - z * x) ** _pos(k)
    q0 = sympy.expand(l * (1 - x) * (1 - z * x) - (m - l) * x * (1 - z * x) + k * z * x * (1 - x))
    return KernelData(ShiftVector(k, l, m), sympy.expand(n), sympy.expand(d), q0)


@dataclass
class BelyiPoint:
    z0: AlgNum
    x1: object  # AlgNum or the string "oo"
    x2: object
    g_value: Optional[AlgNum]  # g_γ(z₀, x₁)

    def to_json(self) -> dict:
        def enc(v):
            return v if isinstance(v, str) else v.to_json(32)
        return {"z0": self.z0.to_json(64), "x1": enc(self.x1), "x2": enc(self.x2),
                "g": None if self.g_value is None else self.g_value.to_json(32)}


def _symmetric_reduce(expr, q_x, q_y, s_val, p_val):
    """Reduce a symmetric polynomial in (x, y) modulo q(x), q(y); substitute x+y, xy."""
    dom = sympy.QQ.frac_field(Zs)
    _, nf = sympy.reduced(sympy.expand(expr), [q_x, q_y], X, Y, domain=dom)
    P = sympy.Poly(nf, X, Y, domain=dom)
    h = {mon: P.coeff_monomial(X ** mon[0] * Y ** mon[1]) for mon in [(0, 0), (1, 0), (0, 1), (1, 1)]}
    return sympy.cancel(h[(0, 0)] + h[(1, 0)] * s_val + h[(1, 1)] * p_val)


def belyi_condition(gamma):
    """(polynomial in z whose roots are the candidates, g-value function of z, mode)."""
    data = kernel_data(gamma)
    c0, c1, c2 = data.q_coeffs()
    if sympy.simplify(c2) == 0:
        if sympy.simplify(c1) == 0:
            return None, None, "degenerate"
        x1 = -c0 / c1
        n_x, d_x = sympy.Poly(data.n, X), sympy.Poly(data.d, X)
        lc_n, lc_d = n_x.LC(), d_x.LC()
        cond = sympy.together(data.n.subs(X, x1) * lc_d - lc_n * data.d.subs(X, x1))
        gval = sympy.cancel(data.n.subs(X, x1) / data.d.subs(X, x1))
        return sympy.Poly(sympy.numer(cond), Zs), gval, "linear"
    qx = data.q0
    qy = data.q0.subs(X, Y)
    s_val = -c1 / c2
    p_val = c0 / c2
    nY, dY = data.n.subs(X, Y), data.d.subs(X, Y)
    H = sympy.quo(sympy.expand(data.n * dY - nY * data.d), X - Y, X)
    cond = _symmetric_reduce(H, qx, qy, s_val, p_val)
    S = _symmetric_reduce(data.n * dY + nY * data.d, qx, qy, s_val, p_val)
    D = _symmetric_reduce(data.d * dY, qx, qy, s_val, p_val)
    gval = sympy.cancel(S / (2 * D)) if D != 0 else None
    num = sympy.numer(sympy.together(cond))
    if num == 0:
        return None, gval, "identically"
    return sympy.Poly(num, Zs), gval, "quadratic"


def _x_roots(data: KernelData, z0: AlgNum):
    c0, c1, c2 = (sympy.sympify(v).subs(Zs, z0.expr) for v in data.q_coeffs())
    if sympy.simplify(c2) == 0:
        return AlgNum(sympy.radsimp(-c0 / c1)), "oo"
    disc = sympy.sqrt(sympy.radsimp(c1 ** 2 - 4 * c0 * c2))
    r1 = sympy.radsimp((-c1 + disc) / (2 * c2))
    r2 = sympy.radsimp((-c1 - disc) / (2 * c2))
    return AlgNum(r1), AlgNum(r2)


def belyi_z0(gamma, ceiling: int = DEFAULT_DEGREE_CEILING) -> list[BelyiPoint]:
    gamma = ShiftVector.parse(gamma)
    if gamma.is_zero():
        raise ValueError("zero shift vector")
    P, gval, mode = belyi_condition(gamma)
    if P is None or P.degree() <= 0:
        return []
    data = kernel_data(gamma)
    c2 = data.q_coeffs()[2]
    out = []
    for z0, _mult in algnum_roots(P, ceiling):
        if z0.is_zero() or z0 == AlgNum(1):
            continue
        if mode == "quadratic" and sympy.simplify(sympy.sympify(c2).subs(Zs, z0.expr)) == 0:
            continue
        if mode == "linear" and sympy.simplify(sympy.sympify(data.q_coeffs()[1]).subs(Zs, z0.expr)) == 0:
            continue  # q₀ collapses to a nonzero constant: no critical point
        x1, x2 = _x_roots(data, z0)
        g = None
        if gval is not None:
            den = sympy.denom(gval).subs(Zs, z0.expr)
            if sympy.simplify(den) != 0:
                g = AlgNum(sympy.radsimp(gval.subs(Zs, z0.expr))).simplified()
        out.append(BelyiPoint(z0, x1, x2, g))
    return out


def _exact_power(base: int, e: int) -> Fraction:
    if e == 0:
        return Fraction(1)  # includes 0^0
    if base == 0:
        raise ZeroDivisionError("0 to a negative power")
    return Fraction(base) ** e


def r0_prefactor(gamma) -> Fraction:
    k, l, m = ShiftVector.parse(gamma)
    return _exact_power(m, m) / (_exact_power(l, l) * _exact_power(m - l, m - l))


def g_at(gamma, z0, x1) -> AlgNum:
    data = kernel_data(gamma)
    z0 = as_algnum(z0)
    if isinstance(x1, str):  # point at infinity
        n_x, d_x = sympy.Poly(data.n, X), sympy.Poly(data.d, X)
        v = (n_x.LC() / d_x.LC())
        return AlgNum(sympy.radsimp(sympy.sympify(v).subs(Zs, z0.expr)))
    x1 = as_algnum(x1)
    v = data.g.subs({Zs: z0.expr, X: x1.expr})
    return AlgNum(sympy.radsimp(v)).simplified()


def r0_from_kernel(gamma, z0, x1) -> AlgNum:
    """m^m / (l^l (m-l)^(m-l)) · g_γ(z₀, x₁), with 0^0 = 1."""
    f = r0_prefactor(gamma)
    return (g_at(gamma, z0, x1) * AlgNum(sympy.Rational(f.numerator, f.denominator))).simplified()


# ------------------------------------------------------------------ linear system

def kernel_q(gamma, quad):
    """(q1, q0) as polynomials in x at the quadruple, with q(t,x) = q1 + t·q0."""
    k, l, m = ShiftVector.parse(gamma)
    z0 = quad.z0.expr
    a0, b0, c0 = (o.expr for o in quad.offsets)
    q = _q_expr(k, l, m, a0, b0, c0, z0)
    P = sympy.Poly(sympy.expand(q), Ts)
    q0 = sympy.expand(P.coeff_monomial(Ts))
    q1 = sympy.expand(P.coeff_monomial(1))
    return q1, q0


def _q_expr(k, l, m, a0, b0, c0, z0):
    return ((b0 - 1 + l * Ts) * (1 - X) * (1 - z0 * X)
            - (c0 - b0 - 1 + (m - l) * Ts) * X * (1 - z0 * X)
            + (a0 + k * Ts) * z0 * X * (1 - X)
            - (_pos(-l) * (1 - X) * (1 - z0 * X) - _pos(l - m) * X * (1 - z0 * X) - z0 * _pos(k) * X * (1 - X)))


def _poch(xv: UniRat, n: int) -> UniRat:
    out = UniRat.constant(1, xv.K, xv.var)
    if n >= 0:
        for i in range(n):
            out = out * (xv + i)
    else:
        for i in range(1, -n + 1):
            out = out / (xv - i)
    return out


def rhat_from_contiguity(quad, K=None) -> UniRat:
    """R̂(t) = (b+lt)_l (c-b+(m-l)t)_{m-l} / (c+mt)_m · R_γ(β₀+tγ, z₀)."""
    gamma = quad.gamma
    k, l, m = gamma
    if K is None:
        K = number_field([quad.z0, *quad.offsets])
    R, _ = substitute_line(shift_relation(gamma), quad.offsets, gamma, z0=quad.z0, K=K)
    tvar = R.var

    def line(off, slope):
        v = to_field(K, off)
        return UniRat(sympy.Poly.from_list([K.convert(slope), v], tvar, domain=K),
                      sympy.Poly.from_list([K.one], tvar, domain=K))

    bl = line(quad.b0, l)
    cbl = line(quad.c0 - quad.b0, m - l)
    cl = line(quad.c0, m)
    return _poch(bl, l) * _poch(cbl, m - l) / _poch(cl, m) * R


@dataclass
class KernelSolution:
    Rhat: UniRat
    p: list  # UniRat coefficients of x^0..x^deg
    size: int

    def to_json(self) -> dict:
        return {"Rhat": self.Rhat.to_text(), "p": [c.to_text() for c in self.p], "size": self.size}


def _bareiss(A: list, K):
    """Fraction-free forward elimination in place; returns pivot columns' row order."""
    rows, cols = len(A), len(A[0])
    prev = sympy.Poly(1, Ts, domain=K)
    r = 0
    pivots = []
    for col in range(cols - 1):
        piv = next((i for i in range(r, rows) if not A[i][col].is_zero), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, rows):
            for j in range(col + 1, cols):
                A[i][j] = (A[r][col] * A[i][j] - A[i][col] * A[r][j]).exquo(prev)
            A[i][col] = sympy.Poly(0, Ts, domain=K)
        prev = A[r][col]
        pivots.append(col)
        r += 1
    return pivots


def solve_kernel_system(gamma, quad) -> KernelSolution:
    gamma = ShiftVector.parse(gamma)
    k, l, m = gamma
    K = number_field([quad.z0, *quad.offsets])
    z0 = quad.z0.expr
    a0, b0, c0 = (o.expr for o in quad.offsets)
    data = kernel_data(gamma)
    n = sympy.Poly(data.n.subs(Zs, z0), X)
    d = sympy.Poly(data.d.subs(Zs, z0), X)
    M = max(n.degree(), d.degree())
    w = X * (1 - X) * (1 - z0 * X)
    q = _q_expr(k, l, m, a0, b0, c0, z0)

    def coeff_column(expr):
        P = sympy.Poly(sympy.expand(expr), X, Ts, domain=K)
        col = []
        for i in range(M + 1):
            terms = {}
            for (ex, et), cf in P.terms():
                if ex == i:
                    terms[et] = cf
            deg = max(terms) if terms else 0
            col.append(sympy.Poly.from_list([terms.get(j, K.zero) for j in range(deg, -1, -1)], Ts, domain=K))
        return col

    columns = [coeff_column(sympy.diff(X ** j * w, X) + q * X ** j) for j in range(M - 1)]
    columns.append(coeff_column(d.as_expr()))
    rhs = coeff_column(n.as_expr())
    A = [[columns[j][i] for j in range(len(columns))] + [rhs[i]] for i in range(M + 1)]
    pivots = _bareiss(A, K)
    unknowns = len(columns)
    if pivots != list(range(unknowns)):
        raise SingularSystem("coefficient matrix is singular over K(t)")
    for i in range(unknowns, M + 1):
        if not A[i][-1].is_zero:
            raise SingularSystem("kernel system is inconsistent: the input is not admissible")
    sol: list[Optional[UniRat]] = [None] * unknowns
    one = sympy.Poly(1, Ts, domain=K)
    for i in reversed(range(unknowns)):
        acc = UniRat(A[i][-1], one)
        for j in range(i + 1, unknowns):
            acc = acc - UniRat(A[i][j], one) * sol[j]
        sol[i] = acc / UniRat(A[i][i], one)
    Rhat = sol[-1]
    dn, dd = Rhat.degrees()
    if dn != dd:
        raise UnequalDegrees(f"R̂ has numerator degree {dn} and denominator degree {dd}")
    return KernelSolution(Rhat, sol[:-1], M + 1)
