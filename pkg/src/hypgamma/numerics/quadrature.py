"""Euler-integral oracle for 2F1 by adaptive Gauss-Legendre quadrature.

F(a,b,c|z) = Γ(c)/(Γ(b)Γ(c-b)) ∫_0^1 x^{b-1}(1-x)^{c-b-1}(1-zx)^{-a} dx,
valid for Re b > 0 and Re(c-b) > 0.  The algebraic endpoint singularities are
removed by the substitution s = e^{-u} on the half-segment next to each
singular endpoint, which turns x^{b-1} dx into a decaying exponential.  For real
z > 1 the path is bent into the upper half plane through 1/2 + i/2 so that it
passes above the singular point x = 1/z, which is the upper-side limit.
"""
from __future__ import annotations

from functools import lru_cache

import mpmath
from mpmath import mpc, mpf

from ..errors import ParameterOutOfRange, PrecisionExhausted
from .balls import ComplexBall
from .gamma import gamma_mid, rgamma_mid


@lru_cache(maxsize=None)
def gauss_legendre(n: int, prec: int) -> tuple:
    """Nodes and weights on [-1, 1] via Newton iteration on P_n."""
    with mpmath.workprec(prec + 20):
        nodes, weights = [], []
        for i in range(1, (n + 1) // 2 + 1):
            xk = mpmath.cos(mpmath.pi * (i - mpf(0.25)) / (n + mpf(0.5)))
            for _ in range(100):
                p0, p1 = mpf(1), xk
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * xk * p1 - (k - 1) * p0) / k
                dp = n * (xk * p1 - p0) / (xk * xk - 1)
                dx = p1 / dp
                xk -= dx
                if abs(dx) < mpmath.ldexp(mpf(1), -prec - 10):
                    break
            p0, p1 = mpf(1), xk
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * xk * p1 - (k - 1) * p0) / k
            dp = n * (xk * p1 - p0) / (xk * xk - 1)
            w = 2 / ((1 - xk * xk) * dp * dp)
            nodes.append(xk)
            weights.append(w)
            if 2 * i - 1 != n:
                nodes.append(-xk)
                weights.append(w)
        return tuple(nodes), tuple(weights)


def _gl(f, lo, hi, n, prec):
    nodes, weights = gauss_legendre(n, prec)
    half = (hi - lo) / 2
    mid = (hi + lo) / 2
    return half * mpmath.fsum(w * f(mid + half * x) for x, w in zip(nodes, weights))


def _adaptive(f, lo, hi, prec, scale=None, depth=0, n=24):
    """Composite GL on [lo, hi]: compare n and 2n points, bisect when they disagree.

    ``scale`` is the magnitude of the whole integral the piece contributes to;
    the local tolerance is 2^-prec times that.
    """
    coarse = _gl(f, lo, hi, n, prec)
    fine = _gl(f, lo, hi, 2 * n, prec)
    ref = max(abs(fine), scale or 0, mpmath.ldexp(mpf(1), -4 * prec))
    if abs(fine - coarse) <= mpmath.ldexp(ref, -prec):
        return fine
    if depth > 40:
        raise PrecisionExhausted("quadrature subdivision limit reached")
    midp = (lo + hi) / 2
    ref = max(ref, scale or 0)
    return (_adaptive(f, lo, midp, prec, ref, depth + 1, n)
            + _adaptive(f, midp, hi, prec, ref, depth + 1, n))


class _Segment:
    """Straight piece x0 -> x1 with structured logs near the endpoints 0 and 1."""

    def __init__(self, x0, x1, a, b, c, z):
        self.x0, self.x1 = mpc(x0), mpc(x1)
        self.dx = self.x1 - self.x0
        self.a, self.b, self.c, self.z = a, b, c, z
        self.log_x1 = mpmath.log(self.x1) if self.x0 == 0 else None
        self.log_1mx0 = mpmath.log(1 - self.x0) if self.x1 == 1 else None

    def integrand(self, s, one_minus_s, log_s=None, log_1ms=None):
        x = self.x0 + s * self.dx if abs(s) <= abs(one_minus_s) else self.x1 - one_minus_s * self.dx
        if self.x0 == 0:
            lx = (log_s if log_s is not None else mpmath.log(s)) + self.log_x1
        else:
            lx = mpmath.log(x)
        if self.x1 == 1:
            l1 = (log_1ms if log_1ms is not None else mpmath.log(one_minus_s)) + self.log_1mx0
        else:
            l1 = mpmath.log(1 - x)
        if self.z == 1:
            lz = l1
        else:
            lz = mpmath.log(1 - self.z * x)
        return mpmath.exp((self.b - 1) * lx + (self.c - self.b - 1) * l1 - self.a * lz)

    def integrate(self, prec):
        a_sing = self.x0 == 0
        b_sing = self.x1 == 1
        total = mpc(0)
        if a_sing:
            total += _exp_tail(lambda u: self.integrand(mpmath.exp(-u), -mpmath.expm1(-u), log_s=-u) * mpmath.exp(-u),
                               self.b, prec)
        else:
            total += _adaptive(lambda s: self.integrand(s, 1 - s), mpf(0), mpf(0.5), prec)
        if b_sing:
            total += _exp_tail(lambda u: self.integrand(-mpmath.expm1(-u), mpmath.exp(-u), log_1ms=-u) * mpmath.exp(-u),
                               self.c - self.b, prec)
        else:
            total += _adaptive(lambda s: self.integrand(s, 1 - s), mpf(0.5), mpf(1), prec)
        return total * self.dx


def _exp_tail(f, decay, prec):
    """∫_{ln 2}^{∞} f(u) du where |f| ~ exp(-Re(decay) u) for large u."""
    rate = mpmath.re(decay)
    eps = mpmath.ldexp(mpf(1), -prec)
    # length beyond which the tail is negligible
    u_end = mpmath.log(2) + (prec * mpmath.log(2) + 10) / rate
    width = mpf(2)
    lo = mpmath.log(2)
    total = mpc(0)
    while lo < u_end:
        hi = min(lo + width, u_end)
        piece = _adaptive(f, lo, hi, prec, abs(total))
        total += piece
        lo = hi
        width = min(width * 2, mpf(64))
        if abs(piece) <= eps * abs(total) and lo > u_end / 2:
            break
    return total


def euler_oracle(a, b, c, z, prec: int = 128) -> ComplexBall:
    """2F1 through Euler's integral; real z > 1 gives the upper-side value."""
    a, b, c, z = (ComplexBall.coerce(v).mid for v in (a, b, c, z))
    if mpmath.re(b) <= 0 or mpmath.re(c - b) <= 0:
        raise ParameterOutOfRange("Euler integral needs Re b > 0 and Re(c-b) > 0")
    if mpmath.re(b) < mpf(1) / 64 or mpmath.re(c - b) < mpf(1) / 64:
        raise ParameterOutOfRange("endpoint decay too slow for the oracle")
    wp = prec + 24
    vals = []
    for p in (wp, wp + 32):
        with mpmath.workprec(p):
            zc = mpc(z)
            if mpmath.im(zc) == 0 and mpmath.re(zc) >= 1:
                if mpmath.re(zc) == 1 and mpmath.re(c - a - b) <= 0:
                    raise ParameterOutOfRange("z = 1 requires Re(c-a-b) > 0")
                knee = mpc(mpf(0.5), mpf(0.5))
                segs = [_Segment(0, knee, a, b, c, zc), _Segment(knee, 1, a, b, c, zc)]
                if mpmath.re(zc) == 1:
                    segs = [_Segment(0, 1, a, b, c, zc)]
            else:
                segs = [_Segment(0, 1, a, b, c, zc)]
            integral = sum((s.integrate(p) for s in segs), mpc(0))
            pref = gamma_mid(c, p) * rgamma_mid(b, p) * rgamma_mid(c - b, p)
            vals.append(pref * integral)
    with mpmath.workprec(wp + 32):
        v = vals[1]
        rad = abs(vals[0] - vals[1]) + mpmath.ldexp(abs(v), -prec)
        return ComplexBall(v, rad)
