"""Complex Γ via Stirling's series with argument raising and reflection."""
from __future__ import annotations

from functools import lru_cache

import mpmath
from mpmath import mpc, mpf

from ..errors import PoleOfGamma
from .balls import ComplexBall


@lru_cache(maxsize=None)
def _stirling_coeffs(n: int, prec: int) -> tuple:
    """B_2k / (2k(2k-1)) for k = 1..n at the given precision."""
    with mpmath.workprec(prec):
        out = []
        for k in range(1, n + 1):
            p, q = mpmath.bernfrac(2 * k)
            out.append(mpf(p) / (q * (2 * k) * (2 * k - 1)))
        return tuple(out)


def _loggamma_stirling(s: mpc, wp: int) -> mpc:
    """log Γ(s) for Re s large enough that the asymptotic series converges to 2^-wp."""
    eps = mpmath.ldexp(mpf(1), -wp)
    res = (s - mpf(0.5)) * mpmath.log(s) - s + mpmath.log(2 * mpmath.pi) / 2
    inv = 1 / s
    inv2 = inv * inv
    power = inv
    nmax = 4 * wp
    coeffs = _stirling_coeffs(nmax, wp)
    prev = None
    for k in range(nmax):
        term = coeffs[k] * power
        res += term
        mag = abs(term)
        if mag < eps:
            break
        if prev is not None and mag > prev:  # asymptotic divergence; caller raised s too little
            break
        prev = mag
        power *= inv2
    return res


def gamma_mid(s, wp: int) -> mpc:
    """Γ(s) at working precision ``wp`` (no error radius)."""
    with mpmath.workprec(wp + 20):
        s = mpc(s)
        if mpmath.im(s) == 0 and mpmath.re(s) <= 0 and mpmath.re(s) == int(mpmath.re(s)):
            raise PoleOfGamma(f"Gamma pole at {s}")
        if mpmath.re(s) < 0.5:
            # reflection: Γ(s) = π / (sin(πs) Γ(1-s))
            sn = mpmath.sinpi(s)
            if sn == 0:
                raise PoleOfGamma(f"Gamma pole at {s}")
            return mpmath.pi / (sn * gamma_mid(1 - s, wp))
        target = mpf(0.4) * wp
        shift = 0
        if abs(s) < target:
            shift = max(0, int(mpmath.ceil(target - mpmath.re(s))))
        prod = mpc(1)
        for k in range(shift):
            prod *= s + k
        lg = _loggamma_stirling(s + shift, wp + 10)
        return mpmath.exp(lg) / prod


def rgamma_mid(s, wp: int) -> mpc:
    """1/Γ(s), zero at the poles of Γ."""
    with mpmath.workprec(wp + 20):
        s = mpc(s)
        if mpmath.im(s) == 0 and mpmath.re(s) <= 0 and mpmath.re(s) == int(mpmath.re(s)):
            return mpc(0)
        return 1 / gamma_mid(s, wp)


def gamma_c(s, prec: int = 128) -> ComplexBall:
    """Γ(s) as a ball.  The radius covers the input radius (via ψ ≈ log s) and rounding."""
    s = ComplexBall.coerce(s) if not isinstance(s, ComplexBall) else s
    if s.contains_integer_leq0():
        raise PoleOfGamma(f"ball {s} encloses a pole of Gamma")
    wp = prec + 10
    with mpmath.workprec(wp):
        v = gamma_mid(s.mid, wp)
        rad = mpmath.ldexp(abs(v), -prec)
        if s.rad:
            # |Γ'/Γ| is ~|log s| away from poles; near poles use distance to nearest one
            n = int(mpmath.nint(mpmath.re(s.mid)))
            dist = abs(s.mid - n) if n <= 0 else mpf(1)
            dpsi = abs(mpmath.log(abs(s.mid) + 2)) + 1 / max(dist - s.rad, mpf(2) ** -wp)
            rad += abs(v) * mpmath.expm1(s.rad * dpsi * 2)
        return ComplexBall(v, rad)


def rgamma_c(s, prec: int = 128) -> ComplexBall:
    s = ComplexBall.coerce(s) if not isinstance(s, ComplexBall) else s
    wp = prec + 10
    with mpmath.workprec(wp):
        if s.rad == 0 and mpmath.im(s.mid) == 0 and mpmath.re(s.mid) <= 0 and mpmath.re(s.mid) == int(mpmath.re(s.mid)):
            return ComplexBall(mpc(0), mpf(0))
        v = rgamma_mid(s.mid, wp)
        return ComplexBall(v, mpmath.ldexp(abs(v), -prec) + abs(v) * s.rad * (abs(mpmath.log(abs(s.mid) + 2)) + 1) * 4)
