"""Admissible quadruples: lines β₀ + tγ and arguments z₀ with Q_γ(β₀+tγ, z₀) ≡ 0.

The numerator of Q_γ(a+kt, b+lt, c+mt, z) is factored over Q.  A factor whose
leading t-coefficient is a nonzero constant cannot vanish identically in t,
and the factors z, z-1 only vanish at excluded arguments; all of these are
dropped.  The t-coefficients of what remains form the polynomial system.

The system is invariant under moving β₀ along γ, so the first offset with a
nonzero γ-component is fixed to 0.  A lexicographic Gröbner basis with z last
yields a z-eliminant; each irreducible factor is solved separately and every
solution is re-verified by exact substitution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import sympy

from .algebra import (DEFAULT_DEGREE_CEILING, RING, AlgNum, a, as_algnum, b, c, number_field,
                      poly_collect, poly_to_text, t, to_field, z)
from .contiguity import ShiftVector, shift_relation, substitute_line
from .errors import DegreeTooHigh, EliminationFailed

_A, _B, _C, _Z = sympy.symbols("a b c z")
_SYMS = {"a": _A, "b": _B, "c": _C, "z": _Z}


@dataclass(frozen=True)
class AdmissibilitySystem:
    gamma: ShiftVector
    equations: tuple  # ring elements in (a, b, c, z)
    dropped: tuple = ()  # textual record of the discarded factors

    def to_json(self) -> dict:
        return {"gamma": list(self.gamma), "equations": [poly_to_text(e) for e in self.equations],
                "dropped_factors": list(self.dropped)}


@dataclass(frozen=True)
class AdmissibleQuadruple:
    gamma: ShiftVector
    a0: AlgNum
    b0: AlgNum
    c0: AlgNum
    z0: AlgNum
    resonant: bool = False
    witness: Optional[str] = None

    @property
    def offsets(self) -> tuple:
        return (self.a0, self.b0, self.c0)

    def line_text(self) -> str:
        parts = []
        for off, k in zip(self.offsets, self.gamma):
            s = off.to_text()
            if k:
                kt = "t" if k == 1 else ("-t" if k == -1 else f"{k}t")
                s = kt if off.is_zero() else f"{kt} + {s}" if not s.startswith("-") else f"{kt} - {s[1:]}"
            parts.append(s)
        return ", ".join(parts)

    def to_json(self) -> dict:
        return {
            "gamma": list(self.gamma),
            "offsets": [o.to_json(32) for o in self.offsets],
            "z0": self.z0.to_json(64),
            "line": f"F({self.line_text()} | {self.z0.to_text()})",
            "resonant": self.resonant,
            "witness": self.witness,
        }

    @classmethod
    def from_json(cls, d) -> "AdmissibleQuadruple":
        offs = [AlgNum.from_json(o) for o in d["offsets"]]
        return cls(ShiftVector.parse(d["gamma"]), *offs, AlgNum.from_json(d["z0"]),
                   d["resonant"], d["witness"])

    def order_key(self):
        """Listing order: by z0, then smaller offsets first, positive before negative."""
        zc = complex(self.z0)
        offs = []
        for o in self.offsets:
            v = complex(o)
            offs.append((round(abs(v.real), 12), v.real < 0, round(abs(v.imag), 12), v.imag < 0))
        return (round(zc.real, 12), round(zc.imag, 12), tuple(offs))

    def key(self):
        zc = complex(self.z0)
        return (round(zc.real, 12), round(zc.imag, 12),
                tuple((round(complex(o).real, 12), round(complex(o).imag, 12)) for o in self.offsets))


@dataclass
class UnsolvedComponent:
    """A piece of the solution set the solver could not turn into points."""

    gamma: ShiftVector
    kind: str  # "family" (positive dimensional) or "elimination"
    z_factor: Optional[str]
    residual: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"gamma": list(self.gamma), "kind": self.kind, "z_factor": self.z_factor,
                "residual": self.residual}


@dataclass
class SolveResult:
    quadruples: list
    unsolved: list


def _primitive(p):
    """Integer content removed, positive leading coefficient."""
    if not p:
        return p
    coeffs = [Fraction(int(v.numerator), int(v.denominator)) for v in p.coeffs()]
    den = math.lcm(*(f.denominator for f in coeffs))
    g = math.gcd(*(int(f * den) for f in coeffs))
    scale = Fraction(den, g) * (1 if p.LC > 0 else -1)
    return p * RING(sympy.QQ(scale.numerator, scale.denominator))


def _leading_t_coefficient(f):
    coeffs = poly_collect(f, "t")
    return coeffs[-1] if coeffs else RING.zero


def _is_z_or_z_minus_1(f) -> bool:
    return f in (z, z - 1, 1 - z, -z)


def build_system(gamma) -> AdmissibilitySystem:
    gamma = ShiftVector.parse(gamma)
    rel = shift_relation(gamma)
    k, l, m = gamma
    if rel.Q.is_zero():
        return AdmissibilitySystem(gamma, ())
    qline = substitute_line(rel, (None, None, None), gamma)[1]
    _, factors = qline.num.factor_list()
    kept = RING.one
    dropped = []
    for f, e in factors:
        if f.degree(t) > 0 and _leading_t_coefficient(f).is_ground:
            dropped.append(poly_to_text(f))
            continue
        if f.degree(t) == 0 and _is_z_or_z_minus_1(f):
            dropped.append(poly_to_text(f))
            continue
        kept *= f
    eqs = []
    for coeff in poly_collect(kept, "t"):
        if coeff:
            p = _primitive(coeff)
            if p not in eqs:
                eqs.append(p)
    return AdmissibilitySystem(gamma, tuple(eqs), tuple(dropped))


def _normalizing_index(gamma: ShiftVector) -> int:
    for i, v in enumerate(gamma):
        if v:
            return i
    raise ValueError("zero shift vector")


def evaluate_poly(p, values: dict, K=None):
    """Exact value of a ring element at algebraic points (element of K)."""
    if K is None:
        K = number_field(values.values())
    kv = {name: to_field(K, v) for name, v in values.items()}
    order = ("x", "t", "z", "c", "b", "a")
    acc = K.zero
    for monom, cq in p.terms():
        term = K.convert(sympy.QQ(int(cq.numerator), int(cq.denominator)))
        for name, e in zip(order, monom):
            if e:
                term = term * kv[name] ** e
        acc = acc + term
    return acc


def _is_nonpos_int_free(v: AlgNum) -> bool:
    return v.is_rational and v.to_fraction().denominator == 1


def is_nonresonant(q: AdmissibleQuadruple) -> tuple[bool, Optional[str]]:
    k, l, m = q.gamma
    forms = [
        ("a+kt", q.a0, k),
        ("b+lt", q.b0, l),
        ("c-a+(m-k)t", q.c0 - q.a0, m - k),
        ("c-b+(m-l)t", q.c0 - q.b0, m - l),
    ]
    for name, const, slope in forms:
        if slope == 0 and _is_nonpos_int_free(as_algnum(const)):
            return False, f"{name} = {as_algnum(const).to_text()} is an integer"
    return True, None


def _verify(system: AdmissibilitySystem, vals: dict) -> bool:
    K = number_field(vals.values())
    return all(not evaluate_poly(e, vals, K) for e in system.equations)


def _q_vanishes(gamma, offsets, z0) -> bool:
    rel = shift_relation(gamma)
    _, Q = substitute_line(rel, offsets, gamma, z0=z0)
    return Q.is_zero()


def solve_system(system: AdmissibilitySystem, ceiling: int = DEFAULT_DEGREE_CEILING,
                 with_report: bool = False):
    """Admissible quadruples (and optionally the unsolved components)."""
    gamma = system.gamma
    quads: list[AdmissibleQuadruple] = []
    unsolved: list[UnsolvedComponent] = []
    if gamma.is_zero() or not system.equations:
        if not gamma.is_zero():
            unsolved.append(UnsolvedComponent(gamma, "family", None, ["(no equations)"]))
        return SolveResult(quads, unsolved) if with_report else quads
    fix = _normalizing_index(gamma)
    names = [n for i, n in enumerate("abc") if i != fix]
    syms = [_SYMS[n] for n in names] + [_Z]
    exprs = [e.as_expr().subs(_SYMS["abc"[fix]], 0) for e in system.equations]
    exprs = [e for e in exprs if e != 0]
    G = sympy.groebner(exprs, *syms, order="lex")
    if list(G.exprs) == [1]:
        return SolveResult(quads, unsolved) if with_report else quads
    zpolys = [g for g in G.exprs if g.free_symbols <= {_Z}]
    if not zpolys:
        unsolved.append(UnsolvedComponent(gamma, "family", None, [str(g) for g in G.exprs]))
        return SolveResult(quads, unsolved) if with_report else quads
    elim = sympy.Poly(zpolys[0], _Z)
    for fac, _mult in elim.factor_list()[1]:
        fz = fac.as_expr()
        if fac.degree() == 1 and sympy.solve(fz, _Z)[0] in (0, 1):
            continue
        if fac.degree() > ceiling:
            raise DegreeTooHigh(f"z-eliminant factor of degree {fac.degree()} exceeds {ceiling}")
        Gf = sympy.groebner(list(G.exprs) + [fz], *syms, order="lex")
        if list(Gf.exprs) == [1]:
            continue
        if not Gf.is_zero_dimensional:
            unsolved.append(UnsolvedComponent(gamma, "family", str(fz).replace("**", "^"),
                                              [str(g).replace("**", "^") for g in Gf.exprs]))
            continue
        try:
            sols = sympy.solve_poly_system(list(Gf.exprs), *syms)
        except Exception as err:  # sympy gives up on some non-triangular shapes
            raise EliminationFailed(f"residual system for {fz}: {list(Gf.exprs)} ({err})") from err
        for sol in sols or []:
            vals = dict(zip(names + ["z"], (AlgNum(sympy.radsimp(v)) for v in sol)))
            vals["abc"[fix]] = AlgNum(0)
            z0 = vals["z"]
            if z0.is_zero() or z0 == AlgNum(1):
                continue
            for v in vals.values():
                if v.degree > ceiling:
                    raise DegreeTooHigh(f"solution coordinate {v} has degree {v.degree}")
            if not _verify(system, vals):
                raise EliminationFailed(f"back-substitution check failed at {vals}")
            offsets = (vals["a"], vals["b"], vals["c"])
            q = AdmissibleQuadruple(gamma, *offsets, z0)
            ok, wit = is_nonresonant(q)
            q = AdmissibleQuadruple(gamma, *offsets, z0, not ok, wit)
            if all(q.key() != other.key() for other in quads):
                quads.append(q)
    quads.sort(key=lambda q: q.order_key())
    return SolveResult(quads, unsolved) if with_report else quads


def admissible_quadruples(gamma, ceiling: int = DEFAULT_DEGREE_CEILING) -> SolveResult:
    return solve_system(build_system(gamma), ceiling, with_report=True)


def find_quadruple(gamma, offsets, z0) -> Optional[AdmissibleQuadruple]:
    """Locate the solver's quadruple with the given offsets and argument."""
    target = AdmissibleQuadruple(ShiftVector.parse(gamma), *(as_algnum(o) for o in offsets), as_algnum(z0))
    for q in admissible_quadruples(gamma).quadruples:
        if q.key() == target.key():
            return q
    return None
