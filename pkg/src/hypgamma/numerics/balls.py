"""Midpoint-radius complex balls on top of mpmath multiprecision floats.

Each operation runs at the ambient mpmath precision and adds the rounding
error of the midpoint computation to the propagated radius.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpc, mpf


def _eps(v) -> mpf:
    return mpmath.ldexp(abs(v), -mpmath.mp.prec + 1)


def to_mpc(v):
    if isinstance(v, ComplexBall):
        return v.mid
    if isinstance(v, Fraction):
        return mpc(mpf(v.numerator) / v.denominator)
    if hasattr(v, "to_mpc"):
        return v.to_mpc(mpmath.mp.prec)
    return mpc(v)


@dataclass(frozen=True)
class ComplexBall:
    mid: mpc
    rad: mpf = mpf(0)

    def __post_init__(self):
        # keep the caller's precision: mpc(x) would round to the ambient precision
        if not isinstance(self.mid, mpc):
            object.__setattr__(self, "mid", mpc(self.mid))
        r = self.rad if isinstance(self.rad, mpf) else mpf(self.rad)
        object.__setattr__(self, "rad", abs(r))

    @classmethod
    def coerce(cls, v) -> "ComplexBall":
        if isinstance(v, ComplexBall):
            return v
        if hasattr(v, "enclosure"):
            return v.enclosure(mpmath.mp.prec)
        m = to_mpc(v)
        exact = isinstance(v, (int, Fraction)) and (isinstance(v, int) or v.denominator & (v.denominator - 1) == 0)
        return cls(m, mpf(0) if exact else _eps(m))

    # ---- arithmetic
    def __add__(self, o):
        o = ComplexBall.coerce(o)
        m = self.mid + o.mid
        return ComplexBall(m, self.rad + o.rad + _eps(m))

    __radd__ = __add__

    def __neg__(self):
        return ComplexBall(-self.mid, self.rad)

    def __sub__(self, o):
        return self + (-ComplexBall.coerce(o))

    def __rsub__(self, o):
        return ComplexBall.coerce(o) - self

    def __mul__(self, o):
        o = ComplexBall.coerce(o)
        m = self.mid * o.mid
        r = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad + _eps(m)
        return ComplexBall(m, r)

    __rmul__ = __mul__

    def inv(self) -> "ComplexBall":
        from ..errors import PoleEncountered

        am = abs(self.mid)
        if am <= self.rad:
            raise PoleEncountered("division by a ball containing 0")
        m = 1 / self.mid
        return ComplexBall(m, self.rad / (am * (am - self.rad)) + _eps(m))

    def __truediv__(self, o):
        return self * ComplexBall.coerce(o).inv()

    def __rtruediv__(self, o):
        return ComplexBall.coerce(o) * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("ComplexBall ** requires an int; use exp/log for other powers")
        if n < 0:
            return (self ** (-n)).inv()
        out = ComplexBall(mpc(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exp(self) -> "ComplexBall":
        m = mpmath.exp(self.mid)
        # |exp(w) - exp(mid)| <= |exp(mid)| (e^rad - 1)
        return ComplexBall(m, abs(m) * mpmath.expm1(self.rad) + _eps(m))

    def log(self, branch_shift: int = 0) -> "ComplexBall":
        from ..errors import PoleEncountered

        am = abs(self.mid)
        if am <= self.rad:
            raise PoleEncountered("log of a ball containing 0")
        m = mpmath.log(self.mid) + 2j * mpmath.pi * branch_shift
        return ComplexBall(m, -mpmath.log1p(-self.rad / am) + _eps(m))

    def conjugate(self) -> "ComplexBall":
        return ComplexBall(mpmath.conj(self.mid), self.rad)

    # ---- predicates
    def contains(self, v) -> bool:
        return abs(to_mpc(v) - self.mid) <= self.rad

    def overlaps(self, other) -> bool:
        o = ComplexBall.coerce(other)
        return abs(self.mid - o.mid) <= self.rad + o.rad

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def contains_integer_leq0(self) -> bool:
        re_ = mpmath.re(self.mid)
        n = int(mpmath.nint(re_))
        return n <= 0 and abs(self.mid - n) <= self.rad

    @property
    def real(self):
        return mpmath.re(self.mid)

    @property
    def imag(self):
        return mpmath.im(self.mid)

    def __abs__(self):
        return abs(self.mid)

    def rel_accuracy_bits(self) -> float:
        if self.rad == 0:
            return float("inf")
        if self.mid == 0:
            return float("-inf")
        return float(mpmath.log(abs(self.mid) / self.rad, 2))

    def __complex__(self):
        return complex(self.mid)

    # ---- decimal I/O
    def to_string(self, digits: int = 30) -> str:
        re_, im_ = mpmath.re(self.mid), mpmath.im(self.mid)
        if im_ == 0:
            body = mpmath.nstr(re_, digits, min_fixed=1, max_fixed=0)
        else:
            sign = "+" if im_ >= 0 else "-"
            body = (f"({mpmath.nstr(re_, digits, min_fixed=1, max_fixed=0)} {sign} "
                    f"{mpmath.nstr(abs(im_), digits, min_fixed=1, max_fixed=0)}j)")
        return f"{body} ± {mpmath.nstr(self.rad, 3, min_fixed=1, max_fixed=0)}"

    def __str__(self):
        return self.to_string()

    def to_json(self, digits: int = 40) -> dict:
        return {
            "re": mpmath.nstr(mpmath.re(self.mid), digits, min_fixed=1, max_fixed=0),
            "im": mpmath.nstr(mpmath.im(self.mid), digits, min_fixed=1, max_fixed=0),
            "rad": mpmath.nstr(self.rad, 5, min_fixed=1, max_fixed=0),
        }

    @classmethod
    def from_json(cls, d: dict) -> "ComplexBall":
        return cls(mpc(mpf(d["re"]), mpf(d["im"])), mpf(d["rad"]))


_BALL_RE = re.compile(r"^\s*\(?\s*([^±]+?)\s*\)?\s*(?:±\s*(\S+))?\s*$")


def parse_ball(s: str) -> ComplexBall:
    """Parse ``"1.25e0 ± 3e-41"`` or ``"(1.5 + 2j) ± 1e-30"`` or a bare number."""
    m = _BALL_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse ball {s!r}")
    mid = parse_complex(m.group(1))
    rad = mpf(m.group(2)) if m.group(2) else mpf(0)
    return ComplexBall(mid, rad)


def parse_complex(s: str) -> mpc:
    """Parse a decimal/rational complex literal like ``-7/10+1/5i`` or ``1.5-2j``."""
    s = s.replace(" ", "").replace("I", "j").replace("i", "j")
    if "/" in s and "j" not in s:
        return mpc(mpf(Fraction(s).numerator) / Fraction(s).denominator)
    parts = [p for p in _NUM_TOKEN.findall(s) if p]
    if "".join(parts) != s:
        raise ValueError(f"cannot parse complex literal {s!r}")
    total = mpc(0)
    for p in parts:
        if p.endswith("j"):
            core = p[:-1]
            if core in ("", "+", "-"):
                core += "1"
            total += 1j * _real(core)
        else:
            total += _real(p)
    return total


_NUM_TOKEN = re.compile(r"[+-]?(?:(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?)?j?")


def _real(s: str) -> mpf:
    if "/" in s:
        f = Fraction(s)
        return mpf(f.numerator) / f.denominator
    return mpf(s)
