"""Exact arithmetic: polynomials and rational functions over Q, algebraic numbers.

Polynomials live in one global sparse ring Q[a, b, c, z, t, x] ordered
graded-lexicographically with a < b < c < z < t < x.  The arithmetic itself is
sympy's ``PolyElement`` (sparse, exact, with a heuristic/subresultant gcd);
this module adds rational functions with a canonical normal form, coefficient
collection, text serialization and algebraic numbers given by minimal
polynomial plus an isolating numeric enclosure.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import mpmath
import sympy
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from .errors import DegreeTooHigh, ZeroDenominator

VARIABLES = ("a", "b", "c", "z", "t", "x")

# sympy orders generators from most to least significant
RING, x, t, z, c, b, a = ring("x,t,z,c,b,a", QQ, grlex)
GENS = {"a": a, "b": b, "c": c, "z": z, "t": t, "x": x}
MultiPoly = PolyElement

DEFAULT_DEGREE_CEILING = 4
_SYM = {name: sympy.Symbol(name) for name in VARIABLES}


def gen(name: str) -> PolyElement:
    return GENS[name]


def poly(value) -> PolyElement:
    """Coerce an int, Fraction, polynomial or sympy expression into the ring."""
    if isinstance(value, PolyElement):
        return value
    if isinstance(value, Fraction):
        return RING(QQ(value.numerator, value.denominator))
    if isinstance(value, int):
        return RING(value)
    if isinstance(value, str):
        return poly_from_text(value)
    return RING.from_expr(sympy.sympify(value))


def _index(var) -> int:
    if isinstance(var, str):
        var = GENS[var]
    return RING.gens.index(var)


def poly_collect(p: PolyElement, var) -> list[PolyElement]:
    """Coefficients c_0..c_d of p viewed as a polynomial in ``var``."""
    i = _index(var)
    buckets: dict[int, dict] = {}
    for monom, coeff in p.terms():
        e = monom[i]
        rest = monom[:i] + (0,) + monom[i + 1:]
        buckets.setdefault(e, {})[rest] = coeff
    if not buckets:
        return []
    out = [RING.zero] * (max(buckets) + 1)
    for e, terms in buckets.items():
        out[e] = RING.from_dict(terms)
    return out


def poly_assemble(coeffs: Sequence[PolyElement], var) -> PolyElement:
    v = GENS[var] if isinstance(var, str) else var
    acc = RING.zero
    for ci in reversed(list(coeffs)):
        acc = acc * v + ci
    return acc


def poly_variables(p: PolyElement) -> list[str]:
    used = set()
    for monom in p.monoms():
        for name, e in zip(("x", "t", "z", "c", "b", "a"), monom):
            if e:
                used.add(name)
    return [v for v in VARIABLES if v in used]


def _fmt_coeff(q) -> str:
    q = Fraction(int(q.numerator), int(q.denominator))
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def poly_to_text(p: PolyElement) -> str:
    """Canonical text: terms in descending grlex order, explicit ``^`` powers."""
    if not p:
        return "0"
    names = ("x", "t", "z", "c", "b", "a")
    pieces = []
    for monom, coeff in p.terms():  # already sorted by the ring order
        factors = []
        # print variables in a, b, c, z, t, x order
        for name, e in sorted(zip(names, monom), key=lambda ne: VARIABLES.index(ne[0])):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        cq = Fraction(int(coeff.numerator), int(coeff.denominator))
        sign = "-" if cq < 0 else "+"
        mag = abs(cq)
        if not factors:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _fmt_coeff(mag) + "*" + "*".join(factors)
        pieces.append((sign, body))
    head_sign, head = pieces[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN_OK = re.compile(r"^[0-9abcztx+\-*/^() .]*$")


def poly_from_text(s: str) -> PolyElement:
    if not _TOKEN_OK.match(s):
        raise ValueError(f"not a polynomial in {VARIABLES}: {s!r}")
    expr = sympy.sympify(s.replace("^", "**"), locals=_SYM)
    return RING.from_expr(expr) if expr != 0 else RING.zero


class RatFunc:
    """Exact rational function num/den over Q.

    Instances are normalized on construction: numerator and denominator are
    coprime and the denominator's leading coefficient (grlex) is 1, so two
    equal rational functions compare structurally equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized: bool = False):
        num = poly(num)
        den = RING.one if den is None else poly(den)
        if not den:
            raise ZeroDenominator("rational function with zero denominator")
        if not _normalized:
            if not num:
                den = RING.one
            elif den != RING.one:
                num, den = num.cancel(den)
            lc = den.LC
            if lc != 1:
                num = num.quo_ground(lc)
                den = den.quo_ground(lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def raw(cls, num, den) -> "RatFunc":
        """An unnormalized pair (used only to exercise ``ratfunc_normalize``)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", poly(num))
        object.__setattr__(obj, "den", poly(den))
        return obj

    @staticmethod
    def _coerce(other) -> "RatFunc":
        return other if isinstance(other, RatFunc) else RatFunc(other)

    def _fast(self, num, den) -> "RatFunc":
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return RatFunc(num, den, _normalized=True)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        g = self.den.gcd(o.den)
        d1 = o.den.exquo(g)
        d2 = self.den.exquo(g)
        return RatFunc(self.num * d1 + o.num * d2, self.den * d1)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.num or not o.num:
            return RatFunc(RING.zero)
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        return self._fast(self.num.exquo(g1) * o.num.exquo(g2), self.den.exquo(g2) * o.den.exquo(g1))

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if not self.num:
            raise ZeroDenominator("inverse of zero")
        return self._fast(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _normalized=True) if n else RatFunc(1)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc(other)
            except Exception:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return not self.num

    def diff(self, var) -> "RatFunc":
        v = GENS[var] if isinstance(var, str) else var
        return RatFunc(self.num.diff(v) * self.den - self.num * self.den.diff(v), self.den ** 2)

    def subs(self, mapping: dict) -> "RatFunc":
        """Substitute polynomials for variables (simultaneously)."""
        pairs = [(GENS[k] if isinstance(k, str) else k, poly(v)) for k, v in mapping.items()]
        return RatFunc(self.num.compose(pairs), self.den.compose(pairs))

    def variables(self) -> list[str]:
        used = set(poly_variables(self.num)) | set(poly_variables(self.den))
        return [v for v in VARIABLES if v in used]

    def to_text(self) -> str:
        if self.den == RING.one:
            return poly_to_text(self.num)
        return f"({poly_to_text(self.num)})/({poly_to_text(self.den)})"

    @classmethod
    def from_text(cls, s: str) -> "RatFunc":
        expr = sympy.sympify(s.replace("^", "**"), locals=_SYM)
        n, d = sympy.fraction(sympy.together(expr))
        return cls(RING.from_expr(n) if n != 0 else RING.zero, RING.from_expr(d))

    def to_sympy(self):
        return self.num.as_expr() / self.den.as_expr()

    def factored_text(self) -> str:
        return str(sympy.factor(self.to_sympy())).replace("**", "^")

    def __repr__(self):
        return f"RatFunc({self.to_text()})"


def ratfunc_normalize(f: RatFunc) -> RatFunc:
    if not f.den:
        raise ZeroDenominator("rational function with zero denominator")
    return RatFunc(f.num, f.den)


# ---------------------------------------------------------------- algebraic numbers

_X = sympy.Symbol("X")


def _to_mpc(expr, prec: int):
    with mpmath.workprec(prec):
        v = sympy.N(expr, mpmath.libmp.prec_to_dps(prec) + 5)
        re_, im_ = v.as_real_imag()
        return mpmath.mpc(mpmath.mpf(sympy.Float(re_, mpmath.libmp.prec_to_dps(prec) + 5)._mpf_),
                          mpmath.mpf(sympy.Float(im_, mpmath.libmp.prec_to_dps(prec) + 5)._mpf_))


class AlgNum:
    """An algebraic number: a sympy expression plus its minimal polynomial over Q.

    Equality is decided exactly: same minimal polynomial and the numeric
    values isolate the same root.
    """

    __slots__ = ("expr", "__dict__")

    def __init__(self, value):
        if isinstance(value, AlgNum):
            value = value.expr
        elif isinstance(value, Fraction):
            value = sympy.Rational(value.numerator, value.denominator)
        self.expr = sympy.nsimplify(value) if isinstance(value, float) else sympy.sympify(value)

    @cached_property
    def minpoly(self) -> sympy.Poly:
        return sympy.minimal_polynomial(self.expr, _X, polys=True)

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        r = -self.minpoly.all_coeffs()[1] / self.minpoly.all_coeffs()[0]
        r = sympy.Rational(r)
        return Fraction(int(r.p), int(r.q))

    def to_mpc(self, prec: int = 128):
        cache = self.__dict__.setdefault("_mpc_cache", {})
        if prec not in cache:
            if self.is_rational:
                f = self.to_fraction()
                with mpmath.workprec(prec):
                    cache[prec] = mpmath.mpc(mpmath.mpf(f.numerator) / f.denominator)
            else:
                cache[prec] = _to_mpc(self.expr, prec)
        return cache[prec]

    def __complex__(self):
        return complex(self.to_mpc(64))

    def enclosure(self, prec: int = 128):
        from .numerics.balls import ComplexBall

        mid = self.to_mpc(prec + 16)
        with mpmath.workprec(prec + 16):
            rad = mpmath.ldexp(max(mpmath.mpf(1), abs(mid)), -prec)
        return ComplexBall(mid, rad)

    def isolates(self, prec: int = 128) -> bool:
        """True when the enclosure at ``prec`` contains exactly one root of the minpoly."""
        ball = self.enclosure(prec)
        coeffs = [int(ci) for ci in self.minpoly.all_coeffs()]
        if len(coeffs) == 2:
            return True
        with mpmath.workprec(prec + 32):
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=prec)
            inside = [r for r in roots if abs(r - ball.mid) <= ball.rad * 4]
        return len(inside) == 1

    def is_real(self) -> bool:
        return bool(self.expr.is_real) or abs(mpmath.im(self.to_mpc(96))) < mpmath.mpf(2) ** -80

    def conjugate(self) -> "AlgNum":
        if self.is_real():
            return self
        cand = sympy.conjugate(self.expr)
        if cand.has(sympy.conjugate):
            target = mpmath.conj(self.to_mpc(96))
            roots = sympy.Poly(self.minpoly.as_expr(), _X).all_roots()
            cand = min(roots, key=lambda r: abs(_to_mpc(r, 96) - target))
        return AlgNum(cand)

    # arithmetic builds new sympy expressions
    def _wrap(self, other):
        return other if isinstance(other, AlgNum) else AlgNum(other)

    def __add__(self, o):
        return AlgNum(self.expr + self._wrap(o).expr)

    __radd__ = __add__

    def __sub__(self, o):
        return AlgNum(self.expr - self._wrap(o).expr)

    def __rsub__(self, o):
        return AlgNum(self._wrap(o).expr - self.expr)

    def __mul__(self, o):
        return AlgNum(self.expr * self._wrap(o).expr)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._wrap(o)
        if o.is_zero():
            raise ZeroDenominator("division by algebraic zero")
        return AlgNum(self.expr / o.expr)

    def __rtruediv__(self, o):
        return self._wrap(o) / self

    def __neg__(self):
        return AlgNum(-self.expr)

    def __pow__(self, n: int):
        if n < 0 and self.is_zero():
            raise ZeroDenominator("negative power of zero")
        return AlgNum(self.expr ** n)

    def is_zero(self) -> bool:
        return self.minpoly.degree() == 1 and self.minpoly.all_coeffs()[1] == 0

    def __eq__(self, other):
        if not isinstance(other, AlgNum):
            try:
                other = AlgNum(other)
            except Exception:
                return NotImplemented
        if self.minpoly != other.minpoly:
            return False
        if self.is_rational:
            return True
        return self.isolates(96) and abs(self.to_mpc(96) - other.to_mpc(96)) < mpmath.mpf(2) ** -80

    def __hash__(self):
        return hash(tuple(self.minpoly.all_coeffs()))

    def simplified(self) -> "AlgNum":
        return AlgNum(sympy.nsimplify(sympy.radsimp(sympy.simplify(self.expr))))

    def to_text(self) -> str:
        return str(self.expr).replace("**", "^")

    def minpoly_text(self) -> str:
        return str(self.minpoly.as_expr()).replace("**", "^").replace("X", "z")

    def to_json(self, digits: int = 64) -> dict:
        v = self.to_mpc(int(digits * 3.33) + 20)
        return {
            "expr": self.to_text(),
            "minpoly": self.minpoly_text(),
            "approx": mpmath.nstr(v, digits) if mpmath.im(v) else mpmath.nstr(mpmath.re(v), digits),
        }

    @classmethod
    def from_json(cls, d: dict) -> "AlgNum":
        return cls(sympy.sympify(d["expr"].replace("^", "**")))

    def __repr__(self):
        return f"AlgNum({self.to_text()})"

    __str__ = to_text


def as_algnum(v) -> AlgNum:
    return v if isinstance(v, AlgNum) else AlgNum(v)


def _root_key(r):
    v = complex(_to_mpc(r, 64))
    return (round(v.real, 12), round(v.imag, 12))


def algnum_roots(p, ceiling: int = DEFAULT_DEGREE_CEILING) -> list[tuple[AlgNum, int]]:
    """Distinct complex roots of a univariate polynomial, with multiplicities.

    ``p`` may be a ring element in a single variable, a sympy Poly or an
    expression.  Quadratic factors get radical forms; cubic and quartic
    factors are represented by indexed real/complex roots.
    """
    if isinstance(p, PolyElement):
        if not p:
            raise ValueError("zero polynomial has no finite root set")
        expr = p.as_expr()
    else:
        expr = p.as_expr() if isinstance(p, sympy.Poly) else sympy.sympify(p)
    free = sorted(expr.free_symbols, key=str)
    if len(free) > 1:
        raise ValueError("algnum_roots needs a univariate polynomial")
    var = free[0] if free else _X
    P = sympy.Poly(expr, var, domain="QQ")
    if P.is_zero:
        raise ValueError("zero polynomial has no finite root set")
    out: list[tuple[AlgNum, int]] = []
    for fac, mult in P.factor_list()[1]:
        d = fac.degree()
        if d > ceiling:
            raise DegreeTooHigh(f"irreducible factor of degree {d} exceeds ceiling {ceiling}: {fac.as_expr()}")
        if d <= 2:
            roots = list(sympy.roots(fac, multiple=True))
        else:
            roots = list(fac.all_roots())
        for r in sorted(roots, key=_root_key):
            out.append((AlgNum(r), mult))
    out.sort(key=lambda rm: _root_key(rm[0].expr))
    return out


def number_field(values: Iterable):
    """Smallest convenient sympy domain containing the given algebraic numbers."""
    exts = []
    for v in values:
        v = as_algnum(v)
        if not v.is_rational and all(v.expr != e for e in exts):
            exts.append(v.expr)
    if not exts:
        return QQ
    return QQ.algebraic_field(*exts)


def to_field(K, v):
    v = as_algnum(v)
    if v.is_rational:
        f = v.to_fraction()
        return K.convert(QQ(f.numerator, f.denominator))
    return K.from_sympy(v.expr)


def from_field(K, elem) -> AlgNum:
    return AlgNum(sympy.nsimplify(K.to_sympy(elem)) if K == QQ else K.to_sympy(elem))


class UniRat:
    """Rational function in one variable over a number field K (sympy Polys)."""

    __slots__ = ("num", "den", "K", "var")

    def __init__(self, num: sympy.Poly, den: sympy.Poly):
        if den.is_zero:
            raise ZeroDenominator("zero denominator after specialization")
        if num.is_zero:
            den = sympy.Poly(1, den.gen, domain=den.domain)
        else:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num.exquo(g)
                den = den.exquo(g)
        lc = den.LC()
        self.num = num.quo_ground(lc) if lc != den.domain.one else num
        self.den = den.monic()
        self.K = den.domain
        self.var = den.gen

    def is_zero(self) -> bool:
        return self.num.is_zero

    def degrees(self) -> tuple[int, int]:
        return (self.num.degree(), self.den.degree())

    def eval_at(self, value) -> AlgNum:
        v = to_field(self.K, value) if not isinstance(value, int) else self.K.convert(value)
        d = _horner(self.den, v, self.K)
        if not d:
            raise ZeroDenominator("pole of the specialized rational function")
        return from_field(self.K, self.K.quo(_horner(self.num, v, self.K), d))

    @classmethod
    def constant(cls, value, K, var) -> "UniRat":
        value = K.convert(value)
        return cls(sympy.Poly.from_list([value], var, domain=K), sympy.Poly.from_list([K.one], var, domain=K))

    def _lift(self, o):
        if isinstance(o, UniRat):
            return o
        return UniRat.constant(to_field(self.K, o) if not isinstance(o, int) else o, self.K, self.var)

    def __add__(self, o):
        o = self._lift(o)
        return UniRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return UniRat(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __mul__(self, o):
        o = self._lift(o)
        return UniRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        if o.is_zero():
            raise ZeroDenominator("division by zero rational function")
        return UniRat(self.num * o.den, self.den * o.num)

    def __eq__(self, o):
        if not isinstance(o, UniRat):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def leading_ratio(self) -> AlgNum:
        """lim_{t→∞} when the degrees agree."""
        return from_field(self.K, self.K.quo(self.num.rep.LC(), self.den.rep.LC()))

    def to_text(self) -> str:
        n = str(self.num.as_expr()).replace("**", "^")
        if self.den.degree() == 0:
            return n
        return f"({n})/({str(self.den.as_expr()).replace('**', '^')})"

    def __repr__(self):
        return f"UniRat({self.to_text()})"


def _horner(P: sympy.Poly, v, K):
    acc = K.zero
    for coeff in P.rep.to_list():
        acc = acc * v + coeff
    return acc


def specialize(f: RatFunc, values: dict, var: str = "t", K=None) -> UniRat:
    """Substitute algebraic values for every variable except ``var``."""
    if K is None:
        K = number_field(values.values())
    kvals = {name: to_field(K, v) for name, v in values.items()}
    order = ("x", "t", "z", "c", "b", "a")
    vi = order.index(var)
    sym = _SYM[var]

    def conv(p: PolyElement) -> sympy.Poly:
        coeffs: dict[int, object] = {}
        powcache: dict[tuple, object] = {}
        for monom, cq in p.terms():
            acc = K.convert(QQ(int(cq.numerator), int(cq.denominator)))
            for name, e in zip(order, monom):
                if e == 0 or name == var:
                    continue
                if name not in kvals:
                    raise ValueError(f"no value given for variable {name}")
                key = (name, e)
                if key not in powcache:
                    powcache[key] = K.pow(kvals[name], e) if hasattr(K, "pow") else kvals[name] ** e
                acc = acc * powcache[key]
            d = monom[vi]
            coeffs[d] = coeffs.get(d, K.zero) + acc
        if not coeffs:
            return sympy.Poly(0, sym, domain=K)
        deg = max(coeffs)
        rep = [coeffs.get(i, K.zero) for i in range(deg, -1, -1)]
        return sympy.Poly.from_list(rep, sym, domain=K)

    return UniRat(conv(f.num), conv(f.den))
