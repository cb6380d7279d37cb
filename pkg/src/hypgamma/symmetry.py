"""Kummer's 24 transformations of the hypergeometric equation, as data and as actions.

Each record reads λ(z)·F(a',b',c' | h(z)) with (a',b',c') affine in (a,b,c).
Writing v(a,b,c) = (a-1/2, -b+1/2, c-a-1/2, b-c+1/2), every record permutes
the entries of v; the 24 records realize S₄ exactly once each.  The linear
part of a record moves shift vectors, and two generators (34) and (1234)
already produce the whole group.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import sympy

from .algebra import AlgNum, as_algnum, number_field
from .admissibility import AdmissibleQuadruple, build_system, evaluate_poly, is_nonresonant
from .contiguity import ShiftVector
from .errors import DegenerateArgument, EliminationFailed

_a, _b, _c, _z = sympy.symbols("a b c z")

# λ(z), h(z), a', b', c', permutation (cycle notation)
KUMMER_TABLE = (
    ("1", "z", "a", "b", "c", "(1)"),
    ("(1-z)^(c-a-b)", "z", "c-a", "c-b", "c", "(13)(24)"),
    ("z^(1-c)", "z", "b-c+1", "a-c+1", "2-c", "(14)(23)"),
    ("z^(1-c)*(1-z)^(c-a-b)", "z", "1-b", "1-a", "2-c", "(12)(34)"),
    ("z^(-a)", "1/z", "a", "a-c+1", "a-b+1", "(23)"),
    ("z^(-b)", "1/z", "b-c+1", "b", "b-a+1", "(14)"),
    ("z^(b-c)*(1-z)^(c-a-b)", "1/z", "1-b", "c-b", "a-b+1", "(1342)"),
    ("z^(a-c)*(1-z)^(c-a-b)", "1/z", "c-a", "1-a", "b-a+1", "(1243)"),
    ("1", "1-z", "a", "b", "a+b-c+1", "(34)"),
    ("z^(1-c)*(1-z)^(c-a-b)", "1-z", "1-b", "1-a", "c-a-b+1", "(12)"),
    ("z^(1-c)", "1-z", "b-c+1", "a-c+1", "a+b-c+1", "(1324)"),
    ("(1-z)^(c-a-b)", "1-z", "c-a", "c-b", "c-a-b+1", "(1423)"),
    ("(1-z)^(-a)", "z/(z-1)", "a", "c-b", "c", "(24)"),
    ("(1-z)^(-b)", "z/(z-1)", "c-a", "b", "c", "(13)"),
    ("z^(1-c)*(1-z)^(c-a-1)", "z/(z-1)", "1-b", "a-c+1", "2-c", "(1432)"),
    ("z^(1-c)*(1-z)^(c-b-1)", "z/(z-1)", "b-c+1", "1-a", "2-c", "(1234)"),
    ("z^(-a)", "1-1/z", "a", "a-c+1", "a+b-c+1", "(243)"),
    ("z^(-b)", "1-1/z", "b-c+1", "b", "a+b-c+1", "(134)"),
    ("z^(a-c)*(1-z)^(c-a-b)", "1-1/z", "c-a", "1-a", "c-a-b+1", "(123)"),
    ("z^(b-c)*(1-z)^(c-a-b)", "1-1/z", "1-b", "c-b", "c-a-b+1", "(142)"),
    ("z^(1-c)*(1-z)^(c-a-1)", "1/(1-z)", "1-b", "a-c+1", "a-b+1", "(132)"),
    ("(1-z)^(-a)", "1/(1-z)", "a", "c-b", "a-b+1", "(234)"),
    ("z^(1-c)*(1-z)^(c-b-1)", "1/(1-z)", "b-c+1", "1-a", "b-a+1", "(124)"),
    ("(1-z)^(-b)", "1/(1-z)", "c-a", "b", "b-a+1", "(143)"),
)

Affine = tuple  # ((ca, cb, cc, const) for a', b', c')


def parse_affine(s: str) -> tuple:
    e = sympy.expand(sympy.sympify(s, locals={"a": _a, "b": _b, "c": _c}))
    P = sympy.Poly(e, _a, _b, _c)
    if P.total_degree() > 1:
        raise ValueError(f"{s} is not affine")
    out = []
    for mon in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)):
        v = P.coeff_monomial(mon)
        out.append(Fraction(int(v.p), int(v.q)))
    return tuple(out)


def parse_cycles(s: str) -> tuple:
    """Cycle notation on {1,2,3,4} -> image tuple (π(1), ..., π(4))."""
    img = {i: i for i in range(1, 5)}
    for cyc in s.replace(" ", "").strip("()").split(")("):
        pts = [int(ch) for ch in cyc]
        for i, p in enumerate(pts):
            img[p] = pts[(i + 1) % len(pts)]
    return tuple(img[i] for i in range(1, 5))


def cycle_text(perm: tuple) -> str:
    seen, parts = set(), []
    for i in range(1, 5):
        if i in seen or perm[i - 1] == i:
            seen.add(i)
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j))
            j = perm[j - 1]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "(1)"


_MOBIUS = {  # h as (α, β, γ, δ) for (αz+β)/(γz+δ)
    "z": (1, 0, 0, 1),
    "1/z": (0, 1, 1, 0),
    "1-z": (-1, 1, 0, 1),
    "z/(z-1)": (1, 0, 1, -1),
    "1-1/z": (1, -1, 1, 0),
    "1/(1-z)": (0, 1, -1, 1),
}


def _mobius_name(mat) -> str:
    a, b, c, d = mat
    for name, (p, q, r, s) in _MOBIUS.items():
        # equal up to a scalar
        if a * s - p * d == 0 and all(x * r == y * c for x, y in ((a, p), (b, q))) \
                and all(x * q == y * b for x, y in ((a, p), (c, r), (d, s))) \
                and all(x * p == y * a for x, y in ((b, q), (c, r), (d, s))):
            return name
    raise ValueError(f"not one of the six maps: {mat}")


@dataclass(frozen=True)
class KummerTransform:
    index: int  # 1-based row number
    lam: str
    h: str
    new_params: Affine
    permutation: str

    @property
    def perm(self) -> tuple:
        return parse_cycles(self.permutation)

    def linear_part(self) -> tuple:
        return tuple(row[:3] for row in self.new_params)

    def apply_params(self, beta) -> tuple:
        """Affine image of exact (a, b, c) values (AlgNum, Fraction or int)."""
        beta = [as_algnum(v) for v in beta]
        out = []
        for ca, cb, cc, k in self.new_params:
            v = AlgNum(sympy.Rational(k.numerator, k.denominator))
            for coef, bv in zip((ca, cb, cc), beta):
                if coef:
                    v = v + bv * AlgNum(sympy.Rational(coef.numerator, coef.denominator))
            out.append(v.simplified())
        return tuple(out)

    def apply_shift(self, gamma) -> ShiftVector:
        g = ShiftVector.parse(gamma)
        vals = [sum(coef * x for coef, x in zip(row, g)) for row in self.linear_part()]
        return ShiftVector(*(int(v) for v in vals))

    def apply_z(self, z0) -> AlgNum:
        al, be, ga, de = _MOBIUS[self.h]
        z0 = as_algnum(z0)
        den = z0 * ga + de
        if den.is_zero():
            raise DegenerateArgument(f"h(z₀) = ∞ for h = {self.h}")
        return ((z0 * al + be) / den).simplified()

    def lam_value(self, a, b, c, z):
        """λ(z) numerically, principal branches."""
        import mpmath
        expr = sympy.sympify(self.lam.replace("^", "**"), locals={"a": _a, "b": _b, "c": _c, "z": _z})
        f = sympy.lambdify((_a, _b, _c, _z), expr, "mpmath")
        return f(mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(c), mpmath.mpc(z))

    def to_json(self) -> dict:
        return {"index": self.index, "lambda": self.lam, "h": self.h,
                "params": [_affine_text(r) for r in self.new_params], "permutation": self.permutation}


def _affine_text(row) -> str:
    e = sum((sympy.Rational(c.numerator, c.denominator) * v for c, v in zip(row, (_a, _b, _c, 1))),
            sympy.Integer(0))
    return str(e)


@lru_cache(maxsize=1)
def kummer_transforms() -> tuple:
    out = []
    for i, (lam, h, ap, bp, cp, perm) in enumerate(KUMMER_TABLE, start=1):
        out.append(KummerTransform(i, lam, h, (parse_affine(ap), parse_affine(bp), parse_affine(cp)), perm))
    return tuple(out)


# ------------------------------------------------------------------ 4-vectors

def four_vector(a, b, c) -> tuple:
    """(a-1/2, -b+1/2, c-a-1/2, b-c+1/2) for numbers or sympy expressions."""
    h = Fraction(1, 2) if not isinstance(a, sympy.Basic) else sympy.Rational(1, 2)
    return (a - h, -b + h, c - a - h, b - c + h)


def four_vector_permutation(T: KummerTransform) -> tuple:
    """σ with v(T(β))_i = v(β)_{σ(i)}, found symbolically."""
    v = four_vector(_a, _b, _c)
    ap, bp, cp = (sympy.sympify(_affine_text(r)) for r in T.new_params)
    w = four_vector(ap, bp, cp)
    sigma = []
    for wi in w:
        hits = [j + 1 for j, vj in enumerate(v) if sympy.expand(wi - vj) == 0]
        if len(hits) != 1:
            raise ValueError(f"row {T.index}: entry {wi} is not an entry of the base 4-vector")
        sigma.append(hits[0])
    return tuple(sigma)


def inverse_perm(p: tuple) -> tuple:
    inv = [0] * 4
    for i, pi in enumerate(p, start=1):
        inv[pi - 1] = i
    return tuple(inv)


# ------------------------------------------------------------------ generators

def gen_34(g) -> ShiftVector:
    k, l, m = ShiftVector.parse(g)
    return ShiftVector(k, l, k + l - m)


def gen_1234(g) -> ShiftVector:
    k, l, m = ShiftVector.parse(g)
    return ShiftVector(l - m, -k, -m)


GENERATORS = {"s": gen_34, "r": gen_1234}


def _matrix_of(fn) -> tuple:
    cols = [tuple(fn((1, 0, 0))), tuple(fn((0, 1, 0))), tuple(fn((0, 0, 1)))]
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def _matmul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3))


@lru_cache(maxsize=1)
def generator_closure() -> dict:
    """Linear maps of Z³ reachable from the two generators -> shortest word (rightmost applied first)."""
    ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    gens = {name: _matrix_of(fn) for name, fn in GENERATORS.items()}
    words = {ident: ""}
    frontier = [ident]
    while frontier:
        nxt = []
        for M in frontier:
            for name in sorted(gens):
                N = _matmul(gens[name], M)
                if N not in words:
                    words[N] = name + words[M]
                    nxt.append(N)
        frontier = nxt
    return words


def apply_word(word: str, gamma) -> ShiftVector:
    g = ShiftVector.parse(gamma)
    for ch in reversed(word):
        g = GENERATORS[ch](g)
    return g


@lru_cache(maxsize=1)
def row_words() -> dict:
    """Row index -> generator word with the same action on shift vectors."""
    closure = generator_closure()
    out = {}
    for T in kummer_transforms():
        L = tuple(tuple(int(x) for x in row) for row in T.linear_part())
        if L not in closure:
            raise ValueError(f"row {T.index} is not reachable from the generators")
        out[T.index] = closure[L]
    return out


# ------------------------------------------------------------------ actions

def _verify_admissible(q: AdmissibleQuadruple) -> bool:
    system = build_system(q.gamma)
    vals = {"a": q.a0, "b": q.b0, "c": q.c0, "z": q.z0}
    K = number_field(vals.values())
    return all(not evaluate_poly(e, vals, K) for e in system.equations) if system.equations else \
        _q_identically_zero(q.gamma)


def _q_identically_zero(gamma) -> bool:
    from .contiguity import shift_relation
    return shift_relation(gamma).Q.is_zero()


def act_on_quadruple(T: KummerTransform, q: AdmissibleQuadruple, verify: bool = True) -> AdmissibleQuadruple:
    z_new = T.apply_z(q.z0)
    if z_new.is_zero() or z_new == AlgNum(1):
        raise DegenerateArgument(f"h(z₀) = {z_new.to_text()} is a singular point")
    gamma_new = T.apply_shift(q.gamma)
    offsets = T.apply_params(q.offsets)
    out = AdmissibleQuadruple(gamma_new, *offsets, z_new)
    ok, wit = is_nonresonant(out)
    out = AdmissibleQuadruple(gamma_new, *offsets, z_new, not ok, wit)
    if verify and not _verify_admissible(out):
        raise EliminationFailed(f"image under row {T.index} is not admissible: {out.to_json()}")
    return out


def associates(q: AdmissibleQuadruple, verify: bool = True) -> list:
    """All 24 images (row index, quadruple)."""
    return [(T.index, act_on_quadruple(T, q, verify)) for T in kummer_transforms()]


def in_fundamental_domain(gamma) -> bool:
    k, l, m = ShiftVector.parse(gamma)
    return k >= m - k >= l - m >= -l


@dataclass
class ShiftOrbit:
    representative: ShiftVector
    members: list  # (ShiftVector, row index)

    def to_json(self) -> dict:
        return {"representative": list(self.representative),
                "members": [{"gamma": list(g), "row": i} for g, i in self.members]}


def orbit(gamma) -> ShiftOrbit:
    g = ShiftVector.parse(gamma)
    members = [(T.apply_shift(g), T.index) for T in kummer_transforms()]
    rep, _ = normalize_shift(g)
    return ShiftOrbit(rep, members)


def normalize_shift(gamma) -> tuple:
    """(representative in the fundamental domain, row index taking γ there)."""
    g = ShiftVector.parse(gamma)
    if g.is_zero():
        raise ValueError("zero shift vector")
    cands = [(tuple(T.apply_shift(g)), T.index) for T in kummer_transforms()]
    good = sorted(c for c in cands if in_fundamental_domain(c[0]))
    if not good:
        raise ValueError(f"no image of {g} satisfies the fundamental-domain inequalities")
    rep, idx = good[0]
    return ShiftVector(*rep), idx


def transform_by_cycle(cycles: str) -> Optional[KummerTransform]:
    target = parse_cycles(cycles)
    for T in kummer_transforms():
        if T.perm == target:
            return T
    return None
