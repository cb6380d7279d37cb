"""Expression trees for closed-form right-hand sides, evaluated in ball arithmetic.

Node kinds: Const (algebraic constant), BallConst (numeric constant), Linear (μt+ν),
Param (named placeholder), Gamma(μt+ν), Power(base, μt+ν), Trig(cos|sin of π(μt+ν)),
Cis (e^{πi(μt+ν)}), Sum, Product, Reciprocal.
Trees support ``+ - * /`` and serialize to nested JSON lists.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
from mpmath import mpc, mpf

from ..algebra import AlgNum
from ..errors import BranchUnspecified, PoleEncountered, PoleOfGamma
from .balls import ComplexBall
from .gamma import gamma_c


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class Lin:
    """μ·t + ν with rational μ, ν."""

    mu: Fraction
    nu: Fraction

    def __init__(self, mu=0, nu=0):
        object.__setattr__(self, "mu", _frac(mu))
        object.__setattr__(self, "nu", _frac(nu))

    def at(self, t: ComplexBall) -> ComplexBall:
        if self.mu == 0:
            return ComplexBall.coerce(self.nu)
        return t * ComplexBall.coerce(self.mu) + ComplexBall.coerce(self.nu)

    def at_exact(self, t: Fraction) -> Fraction:
        return self.mu * t + self.nu

    def __add__(self, o):
        o = o if isinstance(o, Lin) else Lin(0, o)
        return Lin(self.mu + o.mu, self.nu + o.nu)

    __radd__ = __add__

    def __neg__(self):
        return Lin(-self.mu, -self.nu)

    def __sub__(self, o):
        return self + (-(o if isinstance(o, Lin) else Lin(0, o)))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, k):
        return Lin(self.mu * _frac(k), self.nu * _frac(k))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return Lin(self.mu / _frac(k), self.nu / _frac(k))

    def to_text(self) -> str:
        return _lin_text(self.mu, self.nu, "t")

    def to_json(self):
        return [str(self.mu), str(self.nu)]

    @classmethod
    def from_json(cls, v):
        return cls(Fraction(v[0]), Fraction(v[1]))


T = Lin(1, 0)


def _lin_text(mu: Fraction, nu: Fraction, var: str) -> str:
    parts = []
    if mu:
        if mu == 1:
            parts.append(var)
        elif mu == -1:
            parts.append("-" + var)
        else:
            parts.append(f"{mu}{var}" if mu.denominator == 1 else f"({mu}){var}")
    if nu or not parts:
        if parts:
            parts.append(("+ " if nu > 0 else "- ") + str(abs(nu)))
        else:
            parts.append(str(nu))
    return " ".join(parts)


class Expr:
    """Base node; arithmetic operators build Sum/Product/Reciprocal trees."""

    def __add__(self, o):
        return Sum((self, wrap(o)))

    def __radd__(self, o):
        return Sum((wrap(o), self))

    def __sub__(self, o):
        return Sum((self, Product((Const(-1), wrap(o)))))

    def __rsub__(self, o):
        return Sum((wrap(o), Product((Const(-1), self))))

    def __mul__(self, o):
        return Product((self, wrap(o)))

    def __rmul__(self, o):
        return Product((wrap(o), self))

    def __truediv__(self, o):
        return Product((self, Reciprocal(wrap(o))))

    def __rtruediv__(self, o):
        return Product((wrap(o), Reciprocal(self)))

    def __neg__(self):
        return Product((Const(-1), self))

    def __pow__(self, exponent):
        return Power(self, exponent if isinstance(exponent, Lin) else Lin(0, exponent))


def wrap(v) -> Expr:
    if isinstance(v, Expr):
        return v
    return Const(v)


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: AlgNum

    def __init__(self, value):
        object.__setattr__(self, "value", value if isinstance(value, AlgNum) else AlgNum(value))


@dataclass(frozen=True, eq=False)
class BallConst(Expr):
    """A constant known only numerically."""

    ball: ComplexBall


@dataclass(frozen=True, eq=False)
class Linear(Expr):
    """The value μt+ν itself."""

    arg: Lin


@dataclass(frozen=True, eq=False)
class Param(Expr):
    """A named free constant, replaced via :func:`bind` before evaluation."""

    name: str


@dataclass(frozen=True, eq=False)
class Gamma(Expr):
    arg: Lin


@dataclass(frozen=True, eq=False)
class Power(Expr):
    base: Expr
    exponent: Lin
    branch: Optional[int] = None  # adds 2πi·branch to the principal log of the base


@dataclass(frozen=True, eq=False)
class Trig(Expr):
    fn: str  # "cos" | "sin", argument π·arg
    arg: Lin


@dataclass(frozen=True, eq=False)
class Cis(Expr):
    arg: Lin  # e^{π i arg}


@dataclass(frozen=True, eq=False)
class Sum(Expr):
    terms: tuple


@dataclass(frozen=True, eq=False)
class Product(Expr):
    factors: tuple


@dataclass(frozen=True, eq=False)
class Reciprocal(Expr):
    inner: Expr


def bind(e: Expr, name: str, value) -> Expr:
    """Copy of the tree with every Param(name) replaced by a constant."""
    if isinstance(e, Param):
        return Const(value) if e.name == name else e
    if isinstance(e, Power):
        return Power(bind(e.base, name, value), e.exponent, e.branch)
    if isinstance(e, Sum):
        return Sum(tuple(bind(x, name, value) for x in e.terms))
    if isinstance(e, Product):
        return Product(tuple(bind(x, name, value) for x in e.factors))
    if isinstance(e, Reciprocal):
        return Reciprocal(bind(e.inner, name, value))
    return e


def gamma_ratio(num: list, den: list) -> Expr:
    """∏Γ(num_i)/∏Γ(den_j) for Lin or rational arguments."""
    def lin(v):
        return v if isinstance(v, Lin) else Lin(0, v)
    out = [Gamma(lin(v)) for v in num] + [Reciprocal(Gamma(lin(v))) for v in den]
    return Product(tuple(out)) if out else Const(1)


# ------------------------------------------------------------------ evaluation

def eval_expr(e: Expr, t, prec: int = 128) -> ComplexBall:
    t = ComplexBall.coerce(t)
    with mpmath.workprec(prec + 20):
        return _eval(e, t, prec + 10)


def _eval(e: Expr, t: ComplexBall, prec: int) -> ComplexBall:
    if isinstance(e, Const):
        return e.value.enclosure(prec)
    if isinstance(e, BallConst):
        return e.ball
    if isinstance(e, Linear):
        return e.arg.at(t)
    if isinstance(e, Param):
        raise ValueError(f"unbound parameter {e.name!r}")
    if isinstance(e, Gamma):
        try:
            return gamma_c(e.arg.at(t), prec)
        except PoleOfGamma as err:
            raise PoleEncountered(str(err)) from err
    if isinstance(e, Power):
        base = _eval(e.base, t, prec)
        expo = e.exponent.at(t)
        if e.exponent.mu == 0 and e.exponent.nu.denominator == 1 and e.branch is None:
            return base ** int(e.exponent.nu)
        on_cut = base.imag == 0 and base.real < 0 if base.rad == 0 else (
            abs(base.imag) <= base.rad and base.real < 0)
        if on_cut and e.branch is None:
            raise BranchUnspecified(f"power of negative real base {base} needs a branch annotation")
        return (expo * base.log(e.branch or 0)).exp()
    if isinstance(e, Trig):
        x = e.arg.at(t)
        m = mpmath.cospi(x.mid) if e.fn == "cos" else mpmath.sinpi(x.mid)
        # derivative bound: |π sin/cos(πx)| <= π cosh(π Im x + π rad)
        d = mpmath.pi * mpmath.cosh(mpmath.pi * (abs(x.imag) + x.rad))
        return ComplexBall(m, d * x.rad + mpmath.ldexp(abs(m) + mpf(2) ** -prec, -prec))
    if isinstance(e, Cis):
        x = e.arg.at(t)
        return (x * ComplexBall(mpc(0, mpmath.pi), mpmath.ldexp(mpmath.pi, -prec))).exp()
    if isinstance(e, Sum):
        acc = ComplexBall(mpc(0))
        for term in e.terms:
            acc = acc + _eval(term, t, prec)
        return acc
    if isinstance(e, Product):
        acc = ComplexBall(mpc(1))
        for f in e.factors:
            acc = acc * _eval(f, t, prec)
        return acc
    if isinstance(e, Reciprocal):
        v = _eval(e.inner, t, prec)
        if v.contains_zero():
            raise PoleEncountered("division by a ball containing 0")
        return v.inv()
    raise TypeError(f"unknown node {e!r}")


def gamma_arguments(e: Expr) -> list[Lin]:
    """All Γ arguments occurring anywhere in the tree."""
    out = []

    def walk(n):
        if isinstance(n, Gamma):
            out.append(n.arg)
        elif isinstance(n, Power):
            walk(n.base)
        elif isinstance(n, Sum):
            for m in n.terms:
                walk(m)
        elif isinstance(n, Product):
            for m in n.factors:
                walk(m)
        elif isinstance(n, Reciprocal):
            walk(n.inner)

    walk(e)
    return out


def is_zero_constant(e: Expr) -> bool:
    return isinstance(e, Const) and e.value.is_zero()


# ------------------------------------------------------------------ serialization

def to_json(e: Expr):
    if isinstance(e, Const):
        return ["const", e.value.to_text()]
    if isinstance(e, BallConst):
        return ["ball", e.ball.to_string(60)]
    if isinstance(e, Linear):
        return ["linear", e.arg.to_json()]
    if isinstance(e, Param):
        return ["param", e.name]
    if isinstance(e, Gamma):
        return ["gamma", e.arg.to_json()]
    if isinstance(e, Power):
        return ["power", to_json(e.base), e.exponent.to_json(), e.branch]
    if isinstance(e, Trig):
        return ["trig", e.fn, e.arg.to_json()]
    if isinstance(e, Cis):
        return ["cis", e.arg.to_json()]
    if isinstance(e, Sum):
        return ["sum"] + [to_json(x) for x in e.terms]
    if isinstance(e, Product):
        return ["product"] + [to_json(x) for x in e.factors]
    if isinstance(e, Reciprocal):
        return ["reciprocal", to_json(e.inner)]
    raise TypeError(e)


def from_json(v) -> Expr:
    import sympy

    kind = v[0]
    if kind == "const":
        return Const(AlgNum(sympy.sympify(v[1].replace("^", "**"))))
    if kind == "ball":
        from .balls import parse_ball
        return BallConst(parse_ball(v[1]))
    if kind == "linear":
        return Linear(Lin.from_json(v[1]))
    if kind == "param":
        return Param(v[1])
    if kind == "gamma":
        return Gamma(Lin.from_json(v[1]))
    if kind == "power":
        return Power(from_json(v[1]), Lin.from_json(v[2]), v[3])
    if kind == "trig":
        return Trig(v[1], Lin.from_json(v[2]))
    if kind == "cis":
        return Cis(Lin.from_json(v[1]))
    if kind == "sum":
        return Sum(tuple(from_json(x) for x in v[1:]))
    if kind == "product":
        return Product(tuple(from_json(x) for x in v[1:]))
    if kind == "reciprocal":
        return Reciprocal(from_json(v[1]))
    raise ValueError(f"unknown node kind {kind!r}")


# ------------------------------------------------------------------ rendering

def _latex_const(a: AlgNum) -> str:
    import sympy

    return sympy.latex(a.expr)


def _lin_latex(l: Lin) -> str:
    return _lin_text(l.mu, l.nu, "t").replace(" ", "")


def _flatten(e: Product) -> tuple:
    """(numerator factors, denominator factors) of nested products, unit constants dropped."""
    num, den = [], []

    def walk(n, into_num):
        if isinstance(n, Product):
            for f in n.factors:
                walk(f, into_num)
        elif isinstance(n, Reciprocal):
            walk(n.inner, not into_num)
        elif isinstance(n, Const) and n.value.expr == 1:
            return
        else:
            (num if into_num else den).append(n)

    walk(e, True)
    return num, den


def _needs_parens(e: Expr) -> bool:
    if not isinstance(e, Const):
        return True
    v = e.value.expr
    return not (v.is_Integer and v >= 0) and not v.is_Symbol


def to_latex(e: Expr) -> str:
    if isinstance(e, Const):
        return _latex_const(e.value)
    if isinstance(e, BallConst):
        return "(" + e.ball.to_string(20).replace("±", r"\pm") + ")"
    if isinstance(e, Linear):
        return f"({_lin_latex(e.arg)})"
    if isinstance(e, Param):
        return e.name
    if isinstance(e, Gamma):
        return rf"\Gamma({_lin_latex(e.arg)})"
    if isinstance(e, Power):
        base = to_latex(e.base)
        if _needs_parens(e.base):
            base = rf"\left({base}\right)"
        exp = _lin_latex(e.exponent)
        return f"{base}^{{{exp}}}"
    if isinstance(e, Trig):
        return rf"\{e.fn}(\pi({_lin_latex(e.arg)}))"
    if isinstance(e, Cis):
        return rf"e^{{\pi i({_lin_latex(e.arg)})}}"
    if isinstance(e, Sum):
        return "\\left(" + " + ".join(to_latex(x) for x in e.terms) + "\\right)"
    if isinstance(e, Product):
        num, den = _flatten(e)
        ntex = "".join(_latex_factor(x) for x in num) if num else "1"
        if not den:
            return ntex
        dtex = "".join(_latex_factor(x) for x in den)
        return rf"\frac{{{ntex}}}{{{dtex}}}"
    if isinstance(e, Reciprocal):
        return rf"\frac{{1}}{{{to_latex(e.inner)}}}"
    raise TypeError(e)


def _latex_factor(e: Expr) -> str:
    tex = to_latex(e)
    if isinstance(e, Const) and (e.value.expr.is_Add or e.value.expr.could_extract_minus_sign()):
        return rf"\left({tex}\right)"
    return tex


def to_text(e: Expr) -> str:
    if isinstance(e, Const):
        return f"({e.value.to_text()})"
    if isinstance(e, BallConst):
        return f"[{e.ball.to_string(20)}]"
    if isinstance(e, Linear):
        return f"({e.arg.to_text()})"
    if isinstance(e, Param):
        return e.name
    if isinstance(e, Gamma):
        return f"Gamma({e.arg.to_text()})"
    if isinstance(e, Power):
        br = f"[branch {e.branch}]" if e.branch else ""
        return f"{to_text(e.base)}^({e.exponent.to_text()}){br}"
    if isinstance(e, Trig):
        return f"{e.fn}(pi*({e.arg.to_text()}))"
    if isinstance(e, Cis):
        return f"exp(pi*i*({e.arg.to_text()}))"
    if isinstance(e, Sum):
        return "(" + " + ".join(to_text(x) for x in e.terms) + ")"
    if isinstance(e, Product):
        num, den = _flatten(e)
        ntext = "*".join(to_text(x) for x in num) if num else "1"
        if not den:
            return ntext
        return ntext + "/" + ("(" + "*".join(to_text(x) for x in den) + ")" if len(den) > 1 else to_text(den[0]))
    if isinstance(e, Reciprocal):
        return f"1/{to_text(e.inner)}"
    raise TypeError(e)
