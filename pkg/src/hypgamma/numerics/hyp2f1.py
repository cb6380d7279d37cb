"""Gauss 2F1 on all of C with the upper-side convention on (1, inf).

Two independent routes are provided:

* ``connection`` picks the Kummer argument of smallest modulus among
  z, z/(z-1), 1-z, 1/z, 1/(1-z), 1-1/z and applies the corresponding
  connection formula with Γ coefficients.
* ``ode`` integrates the hypergeometric equation by Taylor steps from a point
  near 0 along a polyline that never meets [1, inf).

``hyp2f1`` chooses the connection route unless the arguments sit near
e^{±iπ/3} or the formula is resonant, then falls back to the ODE route.
"""
from __future__ import annotations

import mpmath
from mpmath import mpc, mpf

from ..errors import CNonPositiveInteger, DivergentAtOne, PrecisionExhausted
from .balls import ComplexBall
from .gamma import gamma_mid, rgamma_mid

SERIES_RADIUS = mpf("0.8")


def _is_nonpos_int(v) -> bool:
    return mpmath.im(v) == 0 and mpmath.re(v) <= 0 and mpmath.re(v) == int(mpmath.re(v))


def _terminating(a, b):
    """Degree n if a or b is a non-positive integer (smallest such n), else None."""
    ns = [int(-mpmath.re(v)) for v in (a, b) if _is_nonpos_int(v)]
    return min(ns) if ns else None


def _series(a, b, c, z, wp, nmax=None):
    """Direct Gauss series; returns (value, largest term magnitude)."""
    eps = mpmath.ldexp(mpf(1), -wp - 4)
    term = mpc(1)
    total = mpc(1)
    scale = mpf(1)
    n = 0
    limit = nmax if nmax is not None else 200000
    small = 0
    while n < limit:
        den = (c + n) * (n + 1)
        if den == 0:
            raise CNonPositiveInteger(f"c = {c} hits a non-positive integer in the series")
        term = term * (a + n) * (b + n) / den * z
        n += 1
        total += term
        mag = abs(term)
        if mag > scale:
            scale = mag
        if term == 0:
            return total, scale
        if mag <= eps * max(abs(total), mpf(2) ** -wp * scale):
            small += 1
            if small >= 2 and n > abs(a) + abs(b):
                return total, scale
        else:
            small = 0
    if nmax is not None:
        return total, scale
    raise PrecisionExhausted(f"series did not converge at z={z}")


def _log_w(w, zside: int):
    """log of w ∈ {1-z, -z}: on the cut these have imaginary part -Im(z)."""
    if mpmath.im(w) == 0 and mpmath.re(w) < 0:
        return mpmath.log(-w) - 1j * mpmath.pi * zside
    return mpmath.log(w)


def _near_int(v, tol) -> bool:
    return abs(v - mpmath.nint(mpmath.re(v))) < tol


def _rgamma(s, wp):
    return rgamma_mid(s, wp)


def _gamma(s, wp):
    return gamma_mid(s, wp)


# ------------------------------------------------------------------ connection route

ROUTES = ("z", "z/(z-1)", "1-z", "1/z", "1/(1-z)", "1-1/z")


def _kummer_arguments(z):
    out = {"z": z}
    if z != 1:
        out["z/(z-1)"] = z / (z - 1)
        out["1/(1-z)"] = 1 / (1 - z)
    out["1-z"] = 1 - z
    if z != 0:
        out["1/z"] = 1 / z
        out["1-1/z"] = 1 - 1 / z
    return out


def _resonant(route, a, b, c, tol) -> bool:
    if route in ("1-z", "1-1/z"):
        return _near_int(c - a - b, tol)
    if route in ("1/z", "1/(1-z)"):
        return _near_int(a - b, tol)
    return False


def _apply_route(route, a, b, c, z, wp, zside):
    """Value of F via one connection formula; returns (value, scale)."""
    S = lambda *args: _series(*args, wp)  # noqa: E731
    if route == "z":
        return S(a, b, c, z)
    if route == "z/(z-1)":
        w = z / (z - 1)
        f, sc = S(a, c - b, c, w)
        pre = mpmath.exp(-a * _log_w(1 - z, zside))
        return pre * f, sc * abs(pre)
    gc = _gamma(c, wp)
    if route == "1-z":
        w = 1 - z
        f1, s1 = S(a, b, a + b - c + 1, w)
        f2, s2 = S(c - a, c - b, c - a - b + 1, w)
        c1 = gc * _gamma(c - a - b, wp) * _rgamma(c - a, wp) * _rgamma(c - b, wp)
        c2 = gc * _gamma(a + b - c, wp) * _rgamma(a, wp) * _rgamma(b, wp) * mpmath.exp((c - a - b) * _log_w(1 - z, zside))
        return c1 * f1 + c2 * f2, abs(c1) * s1 + abs(c2) * s2
    if route == "1/z":
        w = 1 / z
        f1, s1 = S(a, a - c + 1, a - b + 1, w)
        f2, s2 = S(b, b - c + 1, b - a + 1, w)
        c1 = gc * _gamma(b - a, wp) * _rgamma(b, wp) * _rgamma(c - a, wp) * mpmath.exp(-a * _log_w(-z, zside))
        c2 = gc * _gamma(a - b, wp) * _rgamma(a, wp) * _rgamma(c - b, wp) * mpmath.exp(-b * _log_w(-z, zside))
        return c1 * f1 + c2 * f2, abs(c1) * s1 + abs(c2) * s2
    if route == "1/(1-z)":
        w = 1 / (1 - z)
        L = _log_w(1 - z, zside)
        f1, s1 = S(a, c - b, a - b + 1, w)
        f2, s2 = S(b, c - a, b - a + 1, w)
        c1 = gc * _gamma(b - a, wp) * _rgamma(b, wp) * _rgamma(c - a, wp) * mpmath.exp(-a * L)
        c2 = gc * _gamma(a - b, wp) * _rgamma(a, wp) * _rgamma(c - b, wp) * mpmath.exp(-b * L)
        return c1 * f1 + c2 * f2, abs(c1) * s1 + abs(c2) * s2
    if route == "1-1/z":
        w = 1 - 1 / z
        Lz = mpmath.log(z)
        f1, s1 = S(a, a - c + 1, a + b - c + 1, w)
        f2, s2 = S(c - a, 1 - a, c - a - b + 1, w)
        c1 = gc * _gamma(c - a - b, wp) * _rgamma(c - a, wp) * _rgamma(c - b, wp) * mpmath.exp(-a * Lz)
        c2 = (gc * _gamma(a + b - c, wp) * _rgamma(a, wp) * _rgamma(b, wp)
              * mpmath.exp((c - a - b) * _log_w(1 - z, zside) + (a - c) * Lz))
        return c1 * f1 + c2 * f2, abs(c1) * s1 + abs(c2) * s2
    raise ValueError(route)


def choose_route(a, b, c, z, wp):
    """Best connection route, or None when the ODE route is required."""
    tol = mpmath.ldexp(mpf(1), -wp // 4)
    cands = sorted(_kummer_arguments(z).items(), key=lambda kv: (abs(kv[1]), ROUTES.index(kv[0])))
    for route, w in cands:
        if abs(w) > SERIES_RADIUS:
            return None
        if not _resonant(route, a, b, c, tol):
            return route
    return None


# ------------------------------------------------------------------ ODE route

def _taylor_step(a, b, c, z0, f0, d0, h, wp):
    """Advance (F, F') from z0 to z0+h by the local Taylor expansion."""
    eps = mpmath.ldexp(mpf(1), -wp - 8)
    p = z0 * (1 - z0)
    if p == 0:
        raise ValueError("Taylor step centred on a singular point")
    s = c - (a + b + 1) * z0
    s1 = -(a + b + 1)
    ab = a * b
    # f_n = n-th Taylor coefficient of F at z0 (in powers of (z - z0))
    fprev, fcur = f0, d0
    val = f0 + d0 * h
    der = d0
    hn = h  # h^n for current n=1
    n = 0  # recurrence produces f_{n+2} from f_{n+1}, f_n
    quiet = 0
    scale = abs(f0) + abs(d0 * h)
    while True:
        # coefficient of u^n in z(1-z)F'' + (c-(a+b+1)z)F' - abF at z = z0 + u
        num = -(((1 - 2 * z0) * n * (n + 1) + s * (n + 1)) * fcur
                + (-(n * (n - 1)) + s1 * n - ab) * fprev)
        fnext = num / (p * (n + 2) * (n + 1))
        n += 1
        hn_next = hn * h
        term_v = fnext * hn_next
        term_d = (n + 1) * fnext * hn
        val += term_v
        der += term_d
        mag = abs(term_v) + abs(term_d * h)
        if mag > scale:
            scale = mag
        if mag <= eps * max(abs(val) + abs(der * h), scale * mpmath.ldexp(mpf(1), -wp)):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
        if n > 20 * wp + 400:
            raise PrecisionExhausted("Taylor step failed to converge")
        fprev, fcur = fcur, fnext
        hn = hn_next
    return val, der, scale


def _path(z, zside: int):
    """Polyline from the origin to z avoiding the cut [1, inf)."""
    if mpmath.im(z) == 0 and mpmath.re(z) < 1:
        return [mpc(0), z]
    r = abs(z)
    if mpmath.im(z) == 0:  # real z > 1 (or z == 1 excluded earlier)
        way = z + 1j * zside * mpf("0.5") * r
        return [mpc(0), way, z]
    side = 1 if mpmath.im(z) > 0 else -1
    if mpmath.re(z) > 1 or (mpmath.re(z) > 0.5 and abs(mpmath.im(z)) < 0.5):
        way = z + 1j * side * mpf("0.5") * r
        return [mpc(0), way, z]
    return [mpc(0), z]


def _ode(a, b, c, z, wp, zside):
    pts = _path(z, zside)
    # start: first point along the first segment with modulus <= 1/2
    start_seg_end = pts[1]
    frac = min(mpf(1), mpf("0.5") / abs(start_seg_end)) if abs(start_seg_end) else mpf(1)
    z0 = start_seg_end * frac
    f0, sc0 = _series(a, b, c, z0, wp)
    d1, sc1 = _series(a + 1, b + 1, c + 1, z0, wp)
    d0 = a * b / c * d1
    scale = sc0 + abs(a * b / c) * sc1
    waypoints = [z0] + pts[1:]
    cur = z0
    for target in waypoints[1:]:
        while cur != target:
            dist = min(abs(cur), abs(cur - 1))
            step = target - cur
            maxh = dist / 2
            if abs(step) > maxh:
                step = step / abs(step) * maxh
                nxt = cur + step
            else:
                nxt = target
            f0, d0, sc = _taylor_step(a, b, c, cur, f0, d0, nxt - cur, wp)
            scale = max(scale, sc)
            cur = nxt
    return f0, scale


# ------------------------------------------------------------------ dispatcher

def hyp2f1_mid(a, b, c, z, wp, branch: str = "upper", method: str = "auto"):
    """Midpoint evaluation; returns (value, scale, route)."""
    a, b, c, z = mpc(a), mpc(b), mpc(c), mpc(z)
    zside = 1 if branch == "upper" else -1
    n = _terminating(a, b)
    if _is_nonpos_int(c):
        if n is None or n >= -int(mpmath.re(c)) + 1:
            raise CNonPositiveInteger(f"c = {c} is a non-positive integer")
    if z == 0:
        return mpc(1), mpf(1), "z"
    if n is not None:
        v, sc = _series(a, b, c, z, wp, nmax=n)
        return v, sc, "polynomial"
    if z == 1:
        s = c - a - b
        if mpmath.re(s) <= 0:
            raise DivergentAtOne("F(a,b,c|1) diverges for Re(c-a-b) <= 0")
        v = _gamma(c, wp) * _gamma(s, wp) * _rgamma(c - a, wp) * _rgamma(c - b, wp)
        return v, abs(v), "gauss"
    if method == "ode":
        v, sc = _ode(a, b, c, z, wp, zside)
        return v, sc, "ode"
    route = choose_route(a, b, c, z, wp) if method == "auto" else method
    if route is None:
        v, sc = _ode(a, b, c, z, wp, zside)
        return v, sc, "ode"
    v, sc = _apply_route(route, a, b, c, z, wp, zside)
    return v, sc, route


def hyp2f1(a, b, c, z, prec: int = 128, branch: str = "upper", method: str = "auto") -> ComplexBall:
    """Ball value of 2F1(a, b; c; z).

    For real z > 1 ``branch="upper"`` gives the limit from Im z > 0 and
    ``"lower"`` the limit from below.  The radius is estimated from two
    evaluations at different working precisions, which doubles up to four
    times the target before giving up.
    """
    args = [x if isinstance(x, ComplexBall) else ComplexBall.coerce(x) for x in (a, b, c, z)]
    in_rad = max(x.rad / max(abs(x.mid), mpf(1)) for x in args)
    wp = prec + 32
    while True:
        try:
            with mpmath.workprec(wp):
                v1, sc1, _ = hyp2f1_mid(*(x.mid for x in args), wp, branch, method)
            with mpmath.workprec(wp + 40):
                v2, sc2, route = hyp2f1_mid(*(x.mid for x in args), wp + 40, branch, method)
        except PrecisionExhausted:
            v2 = None
        if v2 is not None:
            with mpmath.workprec(wp + 40):
                rad = abs(v1 - v2) + mpmath.ldexp(sc2, -wp)
                if in_rad:
                    rad += in_rad * (abs(v2) + sc2) * 64
                if rad <= mpmath.ldexp(abs(v2), -prec) or in_rad:
                    return ComplexBall(v2, rad)
        if wp >= 4 * prec:
            # cancellation down to (near) zero: accept absolute accuracy w.r.t. the term scale
            if v2 is not None and rad <= mpmath.ldexp(sc2, -prec):
                return ComplexBall(v2, rad)
            raise PrecisionExhausted(f"2F1 evaluation did not reach {prec} bits")
        wp *= 2


def hyp2f1_derivative(a, b, c, z, prec: int = 128, branch: str = "upper") -> ComplexBall:
    a, b, c = (ComplexBall.coerce(x) for x in (a, b, c))
    with mpmath.workprec(prec + 20):
        f = hyp2f1(a + 1, b + 1, c + 1, z, prec, branch)
        return a * b / c * f
