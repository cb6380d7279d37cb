"""Interpolated Γ-evaluations F(β₀+tγ | z₀) = g(e^{2πit}) R₀ᵗ ∏ Γ(t+αⱼ)/Γ(t+δⱼ).

Pipeline: factor R(t) on the line, bound the Laurent support of g from the
growth of F and Γ along vertical lines, fit the Laurent coefficients from
samples of F at N = p₀ + p∞ + 1 points, then try to recognize each
coefficient in Q(ζ_M) times a small set of multipliers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import mpmath
import sympy
from mpmath import mpc, mpf

from .admissibility import AdmissibleQuadruple
from .algebra import DEFAULT_DEGREE_CEILING, AlgNum, UniRat, algnum_roots, from_field, number_field
from .contiguity import ShiftVector, shift_relation, substitute_line
from .errors import DegreeTooHigh, IllConditioned, PoleEncountered, UnequalDegrees
from .numerics.balls import ComplexBall
from .numerics.expr import BallConst, Cis, Const, Expr, Gamma, Lin, Power, Product, Reciprocal, Sum, T, eval_expr
from .numerics.expr import to_latex as expr_latex
from .numerics.expr import to_text as expr_text
from .numerics.gamma import gamma_c, rgamma_c
from .numerics.hyp2f1 import hyp2f1

SNAP = mpf("1e-30")


# ------------------------------------------------------------------ factor_R

def _roots_with_mult(P: sympy.Poly, ceiling: int) -> list[AlgNum]:
    """Roots of a univariate Poly over a number field, repeated by multiplicity."""
    if P.degree() <= 0:
        return []
    K = P.domain
    out = []
    if K == sympy.QQ:
        for r, mult in algnum_roots(P, ceiling):
            out += [r] * mult
        return out
    for fac, mult in P.factor_list()[1]:
        if fac.degree() == 1:
            c1, c0 = fac.rep.to_list()
            out += [from_field(K, K.quo(-c0, c1)).simplified()] * mult
            continue
        # fall back to the rational norm, keeping the roots of this factor
        expr = fac.as_expr()
        roots = sympy.roots(sympy.Poly(expr, fac.gen), multiple=True)
        if len(roots) != fac.degree():
            raise DegreeTooHigh(f"cannot express the roots of {expr}")
        for r in roots:
            a = AlgNum(sympy.radsimp(r))
            if a.degree > ceiling:
                raise DegreeTooHigh(f"root of degree {a.degree}")
            out += [a] * mult
    return out


def factor_R(R: UniRat, ceiling: int = DEFAULT_DEGREE_CEILING):
    """R = R₀ ∏(t+αⱼ)/(t+δⱼ); returns (R₀, alphas, deltas)."""
    dn, dd = R.degrees()
    if dn != dd:
        raise UnequalDegrees(f"numerator degree {dn} differs from denominator degree {dd}")
    R0 = R.leading_ratio()
    alphas = sorted((-r for r in _roots_with_mult(R.num, ceiling)), key=_sort_key)
    deltas = sorted((-r for r in _roots_with_mult(R.den, ceiling)), key=_sort_key)
    return R0.simplified(), [a.simplified() for a in alphas], [d.simplified() for d in deltas]


def _sort_key(v: AlgNum):
    c = complex(v)
    return (round(c.real, 12), round(c.imag, 12))


# ------------------------------------------------------------------ line data

@dataclass(frozen=True)
class LineView:
    """The quadruple seen through the variable s, with t = sign·s and m ≥ 0 along s."""

    quad: AdmissibleQuadruple
    sign: int
    gamma: ShiftVector  # shift in the s-direction
    R: UniRat

    @property
    def s(self) -> Lin:
        """s as a linear form in t."""
        return T * self.sign


def line_view(quad: AdmissibleQuadruple) -> LineView:
    gamma = quad.gamma
    K = number_field([quad.z0, *quad.offsets])
    R, _ = substitute_line(shift_relation(gamma), quad.offsets, gamma, z0=quad.z0, K=K)
    if gamma.m >= 0:
        return LineView(quad, 1, gamma, R)
    # F(β₀ - (s+1)γ) = F(β₀ - sγ) / R(-s-1)
    tv = R.var
    sub = sympy.Poly(-tv - 1, tv, domain=R.K)
    Rflip = UniRat(R.den.compose(sub), R.num.compose(sub))
    return LineView(quad, -1, -gamma, Rflip)


def _arg(v: AlgNum) -> mpf:
    """Principal argument in (-π, π], exactly π on the negative axis."""
    z = v.to_mpc(128)
    if mpmath.im(z) == 0 or (v.is_real() and mpmath.re(z) < 0):
        return mpmath.pi if mpmath.re(z) < 0 else mpf(0)
    return mpmath.arg(z)


def pole_bound_values(quad: AdmissibleQuadruple, R0: AlgNum, gamma: Optional[ShiftVector] = None):
    """Unrounded bounds at 0 and ∞ for the Laurent factor g."""
    k, l, m = gamma or quad.gamma
    with mpmath.workprec(128):
        one_minus = AlgNum(1) - quad.z0
        common = (abs(_arg(one_minus) * k) / (2 * mpmath.pi)
                  + mpf(abs(l)) / 4 + mpf(abs(m - l)) / 4 - mpf(abs(m)) / 4)
        r = _arg(R0) / (2 * mpmath.pi)
        return r + common, -r + common


def _floor_snapped(v) -> int:
    n = mpmath.nint(v)
    if abs(v - n) < SNAP:
        return int(n)
    return int(mpmath.floor(v))


def pole_bounds(quad: AdmissibleQuadruple, R0: AlgNum, gamma: Optional[ShiftVector] = None) -> tuple[int, int]:
    """(p₀, p∞): negative bounds mean no pole at all and are clamped to 0."""
    b0, binf = pole_bound_values(quad, R0, gamma)
    return max(_floor_snapped(b0), 0), max(_floor_snapped(binf), 0)


# ------------------------------------------------------------------ fitting

def _eval_F(view: LineView, s, prec: int) -> ComplexBall:
    with mpmath.workprec(prec + 30):
        s = ComplexBall.coerce(s)
        args = [off.enclosure(prec + 20) + s * k for off, k in zip(view.quad.offsets, view.gamma)]
    return hyp2f1(*args, view.quad.z0.enclosure(prec + 20), prec)


def _is_bad_sample(view: LineView, alphas, deltas, s: Fraction) -> bool:
    """Γ-quotient infinite or zero, or c on the non-positive integers."""
    def hits(v: AlgNum) -> bool:
        if not v.is_rational:
            return False
        f = v.to_fraction() + s
        return f.denominator == 1 and f <= 0
    if any(hits(v) for v in list(alphas) + list(deltas)):
        return True
    c0, m = view.quad.c0, view.gamma.m
    if c0.is_rational:
        f = c0.to_fraction() + m * s
        if f.denominator == 1 and f <= 0:
            return True
    return False


def _normalized_sample(view, R0, alphas, deltas, s, prec) -> ComplexBall:
    """G(s) = F · R₀^{-s} · ∏Γ(s+δ)/Γ(s+α)."""
    F = _eval_F(view, s, prec)
    with mpmath.workprec(prec + 30):
        s_b = ComplexBall.coerce(s)
        logR = R0.enclosure(prec + 20).log(0)
        acc = F * (-(s_b * logR)).exp()
        for a in alphas:
            acc = acc * rgamma_c(s_b + a.enclosure(prec + 20), prec + 10)
        for d in deltas:
            acc = acc * gamma_c(s_b + d.enclosure(prec + 20), prec + 10)
    return acc


def sample_points(N: int, view, alphas, deltas) -> list[Fraction]:
    pts = []
    for s in range(N):
        p = Fraction(s, N)
        if _is_bad_sample(view, alphas, deltas, p):
            p = p + Fraction(1, 2 * N * 17)
        pts.append(p)
    return pts


def fit_laurent(quad_or_view, R0: AlgNum, alphas, deltas, p0: int, pinf: int, prec: int = 192):
    """Laurent coefficients {j: ball}, j ∈ [-p₀, p∞], of g with g(e^{2πis}) = G(s)."""
    view = quad_or_view if isinstance(quad_or_view, LineView) else line_view(quad_or_view)
    N = p0 + pinf + 1
    js = list(range(-p0, pinf + 1))
    pts = sample_points(N, view, alphas, deltas)
    wp = prec + 40
    G = [_normalized_sample(view, R0, alphas, deltas, p, wp) for p in pts]
    with mpmath.workprec(wp + 20):
        V = mpmath.matrix(N, N)
        for r, p in enumerate(pts):
            w = mpmath.expjpi(2 * mpf(p.numerator) / p.denominator)
            for col, j in enumerate(js):
                V[r, col] = w ** j
        rhs = mpmath.matrix([g.mid for g in G])
        sol = mpmath.lu_solve(V, rhs)
        Vinv = mpmath.inverse(V)
        norm_inv = max(mpmath.fsum(abs(Vinv[i, j]) for j in range(N)) for i in range(N))
        in_rad = max(g.rad for g in G)
        rad = norm_inv * in_rad * 2 + mpmath.ldexp(max(abs(v) for v in sol) + 1, -wp + 8)
        coeffs = {j: ComplexBall(sol[i], rad) for i, j in enumerate(js)}
        # over-determined re-check at two extra points
        scale = max([abs(g.mid) for g in G] + [mpf(1)])
        for extra in (Fraction(1, 2 * N) + Fraction(1, 7), Fraction(-1, 3 * N) + Fraction(2, 11)):
            if _is_bad_sample(view, alphas, deltas, extra):
                extra += Fraction(1, 97)
            g_true = _normalized_sample(view, R0, alphas, deltas, extra, wp).mid
            w = mpmath.expjpi(2 * mpf(extra.numerator) / extra.denominator)
            g_fit = mpmath.fsum(coeffs[j].mid * w ** j for j in js)
            if abs(g_true - g_fit) > mpmath.ldexp(scale * max(norm_inv, 1), -(prec * 3) // 4):
                raise IllConditioned(
                    f"Laurent fit residual {mpmath.nstr(abs(g_true - g_fit), 5)} at s={extra}")
    return coeffs


# ------------------------------------------------------------------ recognition

@dataclass
class RecognizedConstant:
    """Σ qᵢ ζ_M^i times a multiplier ("1", "gamma", "sqrt(d)", "gamma*sqrt(d)")."""

    coords: list  # Fractions, length φ(M)
    M: int
    multiplier: str

    def cyclotomic_part(self) -> AlgNum:
        zeta = sympy.cos(2 * sympy.pi / self.M) + sympy.I * sympy.sin(2 * sympy.pi / self.M)
        expr = sum((sympy.Rational(q.numerator, q.denominator) * zeta ** i
                    for i, q in enumerate(self.coords)), sympy.Integer(0))
        return AlgNum(sympy.nsimplify(sympy.expand(expr)))

    def is_zero(self) -> bool:
        return all(q == 0 for q in self.coords)

    def algebraic_value(self) -> Optional[AlgNum]:
        """Exact value when the multiplier is algebraic."""
        base = self.cyclotomic_part()
        if self.multiplier == "1":
            return base
        if self.multiplier.startswith("sqrt"):
            d = int(self.multiplier[5:-1])
            return AlgNum(sympy.expand(base.expr * sympy.sqrt(d)))
        return None

    def to_expr(self, gamma_quotient: Expr) -> Expr:
        base = Const(self.cyclotomic_part())
        parts = [base]
        if "gamma" in self.multiplier:
            parts.append(gamma_quotient)
        if "sqrt" in self.multiplier:
            d = int(self.multiplier.split("sqrt(")[1][:-1])
            parts.append(Const(AlgNum(sympy.sqrt(d))))
        return parts[0] if len(parts) == 1 else Product(tuple(parts))

    def to_text(self) -> str:
        v = self.cyclotomic_part().to_text()
        return v if self.multiplier == "1" else f"({v})*{self.multiplier}"

    def to_json(self) -> dict:
        return {"coords": [str(q) for q in self.coords], "M": self.M,
                "multiplier": self.multiplier, "value": self.to_text()}


def _totient_basis(M: int) -> int:
    return sympy.totient(M)


def _coords_exact(c: mpc, M: int, tol) -> Optional[list]:
    """Coordinates of c in {1, ζ_M} when φ(M) ≤ 2, rounded to small rationals."""
    d = int(_totient_basis(M))
    if d == 1:
        if abs(mpmath.im(c)) > tol:
            return None
        vals = [mpmath.re(c)]
    else:
        zeta = mpmath.expjpi(mpf(2) / M)
        q1 = mpmath.im(c) / mpmath.im(zeta)
        q0 = mpmath.re(c) - q1 * mpmath.re(zeta)
        vals = [q0, q1]
    out = []
    for v in vals:
        f = _small_rational(v, tol)
        if f is None:
            return None
        out.append(f)
    return out


def _small_rational(v, tol, maxden: int = 10 ** 4) -> Optional[Fraction]:
    f = Fraction(str(mpmath.nstr(v, 60, strip_zeros=False))).limit_denominator(maxden)
    if abs(v - mpf(f.numerator) / f.denominator) > tol:
        return None
    return f


def _coords_pslq(c: mpc, M: int, tol) -> Optional[list]:
    d = int(_totient_basis(M))
    mix = mpmath.e / 3  # irrational weight folding imaginary parts into one real relation
    basis = [mpmath.expjpi(mpf(2 * i) / M) for i in range(d)]
    vec = [mpmath.re(c) + mix * mpmath.im(c)] + [mpmath.re(b) + mix * mpmath.im(b) for b in basis]
    rel = mpmath.pslq(vec, maxcoeff=10 ** 4, maxsteps=10 ** 5, tol=tol)
    if rel is None or rel[0] == 0:
        return None
    coords = [Fraction(-r, rel[0]) for r in rel[1:]]
    approx = mpmath.fsum(mpf(q.numerator) / q.denominator * b for q, b in zip(coords, basis))
    if abs(approx - c) > tol * 16:
        return None
    return coords


def _recognize_one(c: mpc, M: int, multipliers: dict, tol, scale) -> Optional[RecognizedConstant]:
    if abs(c) <= tol * scale:
        return RecognizedConstant([Fraction(0)] * int(_totient_basis(M)), M, "1")
    for name, mval in multipliers.items():
        v = c / mval
        coords = _coords_exact(v, M, tol * max(1, abs(v))) if _totient_basis(M) <= 2 else \
            _coords_pslq(v, M, tol * max(1, abs(v)))
        if coords is not None and any(coords):
            return RecognizedConstant(coords, M, name)
    return None


def denominator_lcm(quad: AdmissibleQuadruple, alphas=(), deltas=()) -> int:
    M = 1
    for v in list(quad.offsets) + list(alphas) + list(deltas):
        if v.is_rational:
            M = math.lcm(M, v.to_fraction().denominator)
    return M


def gamma_quotient_at_zero(alphas, deltas) -> Expr:
    """∏Γ(δⱼ)/∏Γ(αⱼ), skipping non-finite factors."""
    def finite(v: AlgNum) -> bool:
        return not (v.is_rational and v.to_fraction().denominator == 1 and v.to_fraction() <= 0)
    parts = [Gamma(Lin(0, d.to_fraction())) for d in deltas if d.is_rational and finite(d)]
    parts += [Reciprocal(Gamma(Lin(0, a.to_fraction()))) for a in alphas if a.is_rational and finite(a)]
    return Product(tuple(parts)) if parts else Const(1)


def recognize_constants(coeffs: dict, M: int, gamma_quotient: Expr, prec: int = 192):
    """{j: RecognizedConstant or ComplexBall}; recognition failure keeps the ball."""
    wp = prec + 20
    with mpmath.workprec(wp):
        gq = eval_expr(gamma_quotient, 0, wp).mid
        multipliers = {"1": mpc(1), "gamma": gq}
        for d in (2, 3, 6):
            multipliers[f"sqrt({d})"] = mpmath.sqrt(d)
        for d in (2, 3, 6):
            multipliers[f"gamma*sqrt({d})"] = gq * mpmath.sqrt(d)
        scale = max([abs(b.mid) for b in coeffs.values()] + [mpf(1)])
        tol = mpmath.ldexp(mpf(1), -(prec * 3) // 4)
        out = {}
        for j, ball in coeffs.items():
            rec = None
            for MM in _modulus_candidates(M):
                rec = _recognize_one(ball.mid, MM, multipliers, tol, scale)
                if rec is not None:
                    break
            out[j] = rec if rec is not None else ball
    return _harmonize(out)


def _modulus_candidates(M: int) -> list[int]:
    out = [M]
    for extra in (12, 24):
        L = math.lcm(M, extra)
        if L not in out:
            out.append(L)
    return out


def _harmonize(rec: dict) -> dict:
    return dict(sorted(rec.items()))


# ------------------------------------------------------------------ assembly

Coefficient = Union[RecognizedConstant, ComplexBall]


@dataclass
class GammaEvaluation:
    quadruple: AdmissibleQuadruple
    R0: AlgNum
    alphas: list
    deltas: list
    laurent: dict  # j -> Coefficient
    pole_bounds: tuple
    bound_values: tuple
    sign: int = 1  # t = sign·s; the Laurent variable is e^{2πis}
    polynomial_correction: Optional[Expr] = None
    verified_fresh: Optional[bool] = None
    warnings: list = field(default_factory=list)

    @property
    def fully_recognized(self) -> bool:
        return all(isinstance(v, RecognizedConstant) for v in self.laurent.values())

    def gamma_quotient(self) -> Expr:
        return gamma_quotient_at_zero(self.alphas, self.deltas)

    def rhs(self) -> Expr:
        """Right-hand side as an expression tree in t (numeric coefficients become constants)."""
        s = T * self.sign
        gq = self.gamma_quotient()
        terms = []
        for j, coeff in self.laurent.items():
            if isinstance(coeff, RecognizedConstant):
                if coeff.is_zero():
                    continue
                c = coeff.to_expr(gq)
            else:
                c = BallConst(coeff)
            terms.append(c if j == 0 else Product((c, Cis(s * (2 * j)))))
        g = terms[0] if len(terms) == 1 else Sum(tuple(terms)) if terms else Const(0)
        factors = [g]
        if not self.R0 == AlgNum(1):
            factors.append(Power(Const(self.R0), s, 0))
        for a in self.alphas:
            factors.append(Gamma(s + _lin_const(a)))
        for d in self.deltas:
            factors.append(Reciprocal(Gamma(s + _lin_const(d))))
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def lhs_text(self) -> str:
        return f"F({self.quadruple.line_text()} | {self.quadruple.z0.to_text()})"

    def to_text(self) -> str:
        return f"{self.lhs_text()} = {expr_text(self.rhs())}"

    def to_latex(self) -> str:
        q = self.quadruple
        params = q.line_text().replace(" ", "")
        return rf"F\big({params}\,|\,{sympy.latex(q.z0.expr)}\big)={expr_latex(self.rhs())}"

    def to_json(self) -> dict:
        return {
            "quadruple": self.quadruple.to_json(),
            "R0": self.R0.to_json(40),
            "alphas": [a.to_text() for a in self.alphas],
            "deltas": [d.to_text() for d in self.deltas],
            "pole_bounds": list(self.pole_bounds),
            "bound_values": [mpmath.nstr(v, 20) for v in self.bound_values],
            "sign": self.sign,
            "laurent": {str(j): (v.to_json() if isinstance(v, RecognizedConstant)
                                 else {"ball": v.to_string(40)}) for j, v in self.laurent.items()},
            "fully_recognized": self.fully_recognized,
            "verified_fresh": self.verified_fresh,
            "identity": self.to_text(),
            "warnings": list(self.warnings),
        }


def _lin_const(v: AlgNum):
    if not v.is_rational:
        raise DegreeTooHigh(f"Γ argument offset {v} is irrational; not representable as a linear form")
    return v.to_fraction()


def check_identity(ev: GammaEvaluation, ts, prec: int = 192) -> list:
    """Relative discrepancies |LHS-RHS|/|RHS| at the given t values."""
    view = line_view(ev.quadruple)
    rhs = ev.rhs()
    out = []
    for tv in ts:
        with mpmath.workprec(prec + 30):
            tb = ComplexBall.coerce(tv)
            lhs = _eval_F(LineView(view.quad, 1, view.quad.gamma, view.R), tb, prec)
            r = eval_expr(rhs, tb, prec)
            out.append(abs(lhs.mid - r.mid) / abs(r.mid) if r.mid != 0 else abs(lhs.mid))
    return out


def interpolate(quad: AdmissibleQuadruple, prec: int = 192, verify: bool = True) -> GammaEvaluation:
    view = line_view(quad)
    R0, alphas, deltas = factor_R(view.R)
    p0, pinf = pole_bounds(quad, R0, view.gamma)
    bvals = pole_bound_values(quad, R0, view.gamma)
    coeffs = fit_laurent(view, R0, alphas, deltas, p0, pinf, prec)
    M = denominator_lcm(quad, alphas, deltas)
    gq = gamma_quotient_at_zero(alphas, deltas)
    laurent = recognize_constants(coeffs, M, gq, prec)
    ev = GammaEvaluation(quad, R0, alphas, deltas, laurent, (p0, pinf), bvals, view.sign)
    if ev.fully_recognized and verify:
        fresh = [Fraction(3, 10) + Fraction(1, 97), Fraction(-7, 10), Fraction(13, 10)]
        try:
            errs = check_identity(ev, fresh, prec)
            ev.verified_fresh = all(e < mpmath.ldexp(mpf(1), -(prec * 3) // 4) for e in errs)
        except PoleEncountered:
            ev.verified_fresh = None
        if ev.verified_fresh is False:
            ev.warnings.append("recognized constants failed the fresh-sample check; kept numeric")
            ev.laurent = dict(coeffs)
    return ev
