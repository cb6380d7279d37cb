"""Numerical verification of catalog entries.

Both sides are evaluated independently: the left with the 2F1 evaluator
(upper branch on real z > 1), the right by evaluating its expression tree.
A sample passes when the discrepancy, inflated by both radii, is below
10^(-prec/4).
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
from mpmath import mpc, mpf

from ..algebra import AlgNum
from ..errors import BranchUnspecified, CNonPositiveInteger, HypGammaError, PoleEncountered
from ..numerics.balls import ComplexBall
from ..numerics.expr import (Expr, Gamma, Linear, Power, Product, Reciprocal, Sum, bind, eval_expr,
                             is_zero_constant)
from ..numerics.hyp2f1 import hyp2f1
from .entry import CatalogEntry

DEFAULT_SAMPLES = (
    (Fraction(3, 10), Fraction(0)),
    (Fraction(-7, 10), Fraction(1, 5)),
    (Fraction(19, 10), Fraction(0)),
    (Fraction(1, 6), Fraction(1, 3)),
    (Fraction(-5, 4), Fraction(0)),
)
NUDGE = Fraction(1, 97)


def tolerance(prec: int) -> mpf:
    return mpf(10) ** (-mpf(prec) / 4)


def _as_pair(t) -> tuple:
    if isinstance(t, tuple):
        return (Fraction(t[0]), Fraction(t[1]))
    if isinstance(t, complex):
        return (Fraction(t.real).limit_denominator(10**9), Fraction(t.imag).limit_denominator(10**9))
    return (Fraction(t), Fraction(0))


def t_text(t: tuple) -> str:
    re_, im_ = t
    if im_ == 0:
        return str(re_)
    sign = "+" if im_ > 0 else "-"
    return f"{re_} {sign} {abs(im_)}i"


def t_ball(t: tuple, prec: int) -> ComplexBall:
    with mpmath.workprec(prec + 40):
        m = mpc(mpf(t[0].numerator) / t[0].denominator, mpf(t[1].numerator) / t[1].denominator)
        return ComplexBall(m, mpmath.ldexp(abs(m) + 1, -(prec + 36)))


def _linear_nodes(e: Expr, out: list) -> list:
    if isinstance(e, (Gamma, Linear)):
        out.append(e.arg)
    elif isinstance(e, Power):
        _linear_nodes(e.base, out)
    elif isinstance(e, Sum):
        for x in e.terms:
            _linear_nodes(x, out)
    elif isinstance(e, Product):
        for x in e.factors:
            _linear_nodes(x, out)
    elif isinstance(e, Reciprocal):
        _linear_nodes(e.inner, out)
    return out


def _nonpos_int(v: Fraction) -> bool:
    return v.denominator == 1 and v <= 0


def is_bad_sample(entry: CatalogEntry, t: tuple) -> bool:
    """Real t where c, a Γ argument or a linear factor of the RHS is singular, or a
    point of a polynomial-correction lattice."""
    if t[1] != 0:
        return False
    x = t[0]
    if _nonpos_int(entry.params[2].at_exact(x)):
        return True
    for lin in _linear_nodes(entry.rhs, []):
        if _nonpos_int(lin.at_exact(x)):
            return True
    for corr in entry.polynomial_correction:
        if _nonpos_int(x - corr.offset):
            return True
    return False


def sample_points(entry: CatalogEntry, base=DEFAULT_SAMPLES, seed: Optional[int] = None,
                  extra: int = 0) -> list:
    """The base samples, each nudged by +1/97 until it avoids the entry's singular set.

    ``extra`` adds that many random rational samples drawn from ``seed``.
    """
    pts = [_as_pair(t) for t in base]
    if extra:
        rng = random.Random(seed if seed is not None else 0)
        for _ in range(extra):
            pts.append((Fraction(rng.randint(-300, 300), 100), Fraction(rng.randint(-50, 50), 100)))
    out = []
    for t in pts:
        while is_bad_sample(entry, t):
            t = (t[0] + NUDGE, t[1])
        out.append(t)
    return out


@dataclass
class SampleResult:
    t: str
    z: Optional[str]
    discrepancy: Optional[float]
    lhs: Optional[ComplexBall]
    rhs: Optional[ComplexBall]
    absolute: bool = False
    passed: bool = False
    error: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "t": self.t, "z": self.z,
            "discrepancy": None if self.discrepancy is None else f"{self.discrepancy:.3e}",
            "lhs": self.lhs.to_json(30) if self.lhs is not None else None,
            "rhs": self.rhs.to_json(30) if self.rhs is not None else None,
            "absolute": self.absolute, "passed": self.passed, "error": self.error,
        }


@dataclass
class VerificationReport:
    entry_id: str
    samples: list
    verdict: str  # "pass" | "fail" | "skipped"
    reason: Optional[str] = None
    polynomial_checks: list = field(default_factory=list)
    conjugate_checks: list = field(default_factory=list)
    alternatives: dict = field(default_factory=dict)
    tolerance: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def max_discrepancy(self) -> float:
        vals = [s.discrepancy for s in self.samples if s.discrepancy is not None]
        return max(vals) if vals else float("nan")

    def to_json(self) -> dict:
        return {
            "id": self.entry_id, "verdict": self.verdict, "reason": self.reason,
            "tolerance": f"{self.tolerance:.1e}",
            "max_discrepancy": f"{self.max_discrepancy():.3e}",
            "samples": [s.to_json() for s in self.samples],
            "polynomial_checks": [s.to_json() for s in self.polynomial_checks],
            "conjugate_checks": self.conjugate_checks,
            "alternatives": self.alternatives,
        }


def _compare(lhs: ComplexBall, rhs: ComplexBall, absolute: bool) -> mpf:
    diff = abs(lhs.mid - rhs.mid) + lhs.rad + rhs.rad
    if absolute:
        return diff
    denom = abs(rhs.mid) - rhs.rad
    if denom <= 0:
        return mpf("inf")
    return diff / denom


def _lhs(entry: CatalogEntry, tb: ComplexBall, z: AlgNum, prec: int, branch: str = "upper"):
    a, b, c = (p.at(tb) for p in entry.params)
    return hyp2f1(a, b, c, z.enclosure(prec + 40), prec, branch)


def _arguments(entry: CatalogEntry) -> list:
    """(label, LHS argument, RHS tree) for each argument the entry is checked at."""
    if entry.z_param is None:
        return [(None, entry.z0, entry.rhs)]
    zp = entry.z_param
    return [(v.to_text(), zp.lhs_argument(v), bind(entry.rhs, zp.name, v)) for v in zp.values]


def _check(entry, rhs_tree, z, tpair, prec, tol, zlabel) -> SampleResult:
    absolute = is_zero_constant(rhs_tree)
    with mpmath.workprec(prec + 40):
        tb = t_ball(tpair, prec)
        try:
            lhs = _lhs(entry, tb, z, prec)
            rhs = eval_expr(rhs_tree, tb, prec)
        except (PoleEncountered, CNonPositiveInteger) as err:
            return SampleResult(t_text(tpair), zlabel, None, None, None, absolute, False,
                                f"{type(err).__name__}: {err}")
        d = _compare(lhs, rhs, absolute)
    return SampleResult(t_text(tpair), zlabel, float(d), lhs, rhs, absolute, bool(d < tol))


def polynomial_reading(params, t: Fraction, z: AlgNum, prec: int) -> ComplexBall:
    """Finite sum of F(a,b,c|z) with the parameters evaluated at t before summing.

    The sum stops at the first a or b that is a non-positive integer; c may
    itself be a non-positive integer as long as it is not reached earlier.
    """
    a, b, c = (p.at_exact(t) for p in params)
    stops = [-v for v in (a, b) if _nonpos_int(v)]
    if not stops:
        raise ValueError(f"no terminating parameter at t = {t}")
    n = int(min(stops))
    coeffs = [Fraction(1)]
    for k in range(n):
        if c + k == 0:
            raise CNonPositiveInteger(f"(c)_k vanishes before the series terminates at t = {t}")
        coeffs.append(coeffs[-1] * (a + k) * (b + k) / ((c + k) * (k + 1)))
    wp = prec + 40
    with mpmath.workprec(wp):
        zv = z.to_mpc(wp)
        acc, scale, zk = mpc(0), mpf(0), mpc(1)
        for q in coeffs:
            term = (mpf(q.numerator) / q.denominator) * zk
            acc += term
            scale += abs(term)
            zk *= zv
        return ComplexBall(acc, mpmath.ldexp(scale, -(prec + 20)))


def check_polynomial_corrections(entry: CatalogEntry, prec: int, ns=(1, 2, 3)) -> list:
    out = []
    tol = tolerance(prec)
    for corr in entry.polynomial_correction:
        for tv in corr.points(ns):
            with mpmath.workprec(prec + 40):
                try:
                    lhs = polynomial_reading(entry.params, tv, entry.z0, prec)
                    rhs = eval_expr(Product((entry.rhs, corr.factor)), tv, prec)
                except HypGammaError as err:
                    out.append(SampleResult(str(tv), None, None, None, None, False, False, str(err)))
                    continue
                d = _compare(lhs, rhs, False)
            out.append(SampleResult(str(tv), corr.condition, float(d), lhs, rhs, False, bool(d < tol)))
    return out


def _real_entry(entry: CatalogEntry) -> bool:
    z = entry.z0
    if z is None or not z.is_rational or z.to_fraction() <= 1:
        return False
    return True


def check_conjugate_symmetry(entry: CatalogEntry, ts, prec: int) -> list:
    """On real z0 > 1 with real parameters the two boundary values are conjugate."""
    out = []
    tol = tolerance(prec)
    for tp in ts:
        if tp[1] != 0:
            continue
        with mpmath.workprec(prec + 40):
            tb = t_ball(tp, prec)
            up = _lhs(entry, tb, entry.z0, prec, "upper")
            lo = _lhs(entry, tb, entry.z0, prec, "lower")
            d = _compare(lo, up.conjugate(), False)
        out.append({"t": t_text(tp), "discrepancy": f"{float(d):.3e}", "passed": bool(d < tol)})
    return out


def verify_entry(entry: CatalogEntry, t_samples=None, prec: int = 128, seed: Optional[int] = None,
                 extra: int = 0) -> VerificationReport:
    tol = tolerance(prec)
    if t_samples is None:
        ts = sample_points(entry, seed=seed, extra=extra)
    else:
        ts = [_as_pair(t) for t in t_samples]
    samples = []
    try:
        for zlabel, z, tree in _arguments(entry):
            for tp in ts:
                samples.append(_check(entry, tree, z, tp, prec, tol, zlabel))
    except BranchUnspecified as err:
        return VerificationReport(entry.id, samples, "skipped", str(err), tolerance=float(tol))
    poly = check_polynomial_corrections(entry, prec) if entry.polynomial_correction else []
    conj = check_conjugate_symmetry(entry, ts, prec) if _real_entry(entry) else []
    alts = {}
    for label, tree in entry.alternatives:
        res = [_check(entry, tree, entry.z0, tp, prec, tol, None) for tp in ts]
        alts[label] = "pass" if all(r.passed for r in res) else "fail"
    ok = (all(s.passed for s in samples) and all(s.passed for s in poly)
          and all(c["passed"] for c in conj))
    reason = None
    if not ok:
        bad = [s for s in samples + poly if not s.passed]
        reason = (f"{len(bad)} failing check(s)" if bad else "conjugate symmetry check failed")
    return VerificationReport(entry.id, samples, "pass" if ok else "fail", reason, poly, conj, alts,
                              float(tol))


def _verify_one(args):
    entry, prec, seed = args
    return verify_entry(entry, prec=prec, seed=seed)


def verify_all(entries, prec: int = 128, jobs: int = 1, seed: Optional[int] = None) -> list:
    """Reports sorted by entry id; ``jobs > 1`` spreads entries over worker processes."""
    work = [(e, prec, seed) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_one, work))
    else:
        reports = [_verify_one(w) for w in work]
    return sorted(reports, key=lambda r: r.entry_id)


def reproduce_entry(entry: CatalogEntry, prec: int = 192) -> dict:
    """Rebuild a tagged entry through admissibility + interpolation and compare RHS values."""
    from ..admissibility import find_quadruple
    from ..interpolation import interpolate

    if entry.shift is None or entry.z0 is None:
        raise ValueError(f"{entry.id} carries no shift vector")
    quad = find_quadruple(entry.shift, entry.offsets, entry.z0)
    if quad is None:
        return {"id": entry.id, "found": False, "passed": False}
    ev = interpolate(quad, prec)
    rebuilt = ev.rhs()
    tol = tolerance(prec)
    diffs = []
    for tp in sample_points(entry):
        with mpmath.workprec(prec + 40):
            tb = t_ball(tp, prec)
            d = _compare(eval_expr(rebuilt, tb, prec), eval_expr(entry.rhs, tb, prec), False)
        diffs.append(float(d))
    return {"id": entry.id, "found": True, "identity": ev.to_text(),
            "discrepancies": diffs, "passed": all(d < tol for d in diffs)}
