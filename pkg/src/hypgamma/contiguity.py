"""Contiguity relations F(β+γ|z) = R_γ(β,z) F(β|z) + Q_γ(β,z) F'(β|z).

Each unit step of (a, b, c) acts on the column (F, F') by a 2×2 matrix over
Q(a, b, c, z).  The first row of an up-step comes from a ladder identity,
the second row from differentiating it with the hypergeometric equation.
Down-steps in a, b and the up-step in c are inverses of ladder matrices at
shifted parameters.  A relation for γ is the ordered product of unit steps.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import RING, AlgNum, RatFunc, a, b, c, poly, specialize, t, z
from .errors import SingularLadder

ONE = RatFunc(1)
ZERO = RatFunc(0)
_L = z * (1 - z)


@dataclass(frozen=True, order=True)
class ShiftVector:
    k: int
    l: int
    m: int

    @classmethod
    def parse(cls, s) -> "ShiftVector":
        if isinstance(s, ShiftVector):
            return s
        if isinstance(s, str):
            s = [int(p) for p in s.replace("(", "").replace(")", "").split(",")]
        k, l, m = s
        return cls(int(k), int(l), int(m))

    def __iter__(self):
        return iter((self.k, self.l, self.m))

    def __neg__(self):
        return ShiftVector(-self.k, -self.l, -self.m)

    def __add__(self, o):
        return ShiftVector(self.k + o.k, self.l + o.l, self.m + o.m)

    def is_zero(self) -> bool:
        return self.k == self.l == self.m == 0

    def __str__(self):
        return f"({self.k},{self.l},{self.m})"


Matrix = tuple  # ((R00, R01), (R10, R11))


def derivative_pair(R: RatFunc, Q: RatFunc) -> tuple[RatFunc, RatFunc]:
    """(R', Q') such that d/dz (R F + Q F') = R' F + Q' F'.

    Uses F'' = [ab F - (c - (a+b+1) z) F'] / (z(1-z)).
    """
    return (R.diff("z") + Q * RatFunc(a * b, _L),
            R + Q.diff("z") - Q * RatFunc(c - (a + b + 1) * z, _L))


def _ladder_row(direction: str) -> tuple[RatFunc, RatFunc]:
    if direction == "+a":
        return (ONE, RatFunc(z, a))
    if direction == "+b":
        return (ONE, RatFunc(z, b))
    if direction == "-c":
        return (ONE, RatFunc(z, c - 1))
    raise ValueError(direction)


def _ladder(direction: str) -> Matrix:
    row = _ladder_row(direction)
    return (row, derivative_pair(*row))


def _shift_matrix(M: Matrix, at: Sequence[int]) -> Matrix:
    subs = {}
    for name, g, s in zip("abc", (a, b, c), at):
        if s:
            subs[name] = g + s
    if not subs:
        return M
    return tuple(tuple(e.subs(subs) for e in row) for row in M)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return tuple(
        tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2)
    )


def mat_inv(M: Matrix) -> Matrix:
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if det.is_zero():
        raise SingularLadder("ladder matrix has identically zero determinant")
    di = det.inv()
    return ((M[1][1] * di, -M[0][1] * di), (-M[1][0] * di, M[0][0] * di))


IDENTITY: Matrix = ((ONE, ZERO), (ZERO, ONE))


@lru_cache(maxsize=None)
def elementary_matrix(direction: str, at: tuple = (0, 0, 0)) -> Matrix:
    """Matrix U with (F, F')(β+at+e) = U · (F, F')(β+at) for e = ``direction``.

    ``direction`` is one of "+a", "-a", "+b", "-b", "+c", "-c".
    """
    at = tuple(at)
    var = direction[1]
    idx = "abc".index(var)
    if direction in ("+a", "+b", "-c"):
        return _shift_matrix(_ladder(direction), at)
    # inverse steps: undo the ladder step that lands on β+at
    if direction in ("-a", "-b"):
        base = list(at)
        base[idx] -= 1
        return mat_inv(_shift_matrix(_ladder("+" + var), base))
    if direction == "+c":
        base = list(at)
        base[idx] += 1
        return mat_inv(_shift_matrix(_ladder("-c"), base))
    raise ValueError(direction)


def _path_steps(gamma: ShiftVector, order: str = "abc"):
    pos = [0, 0, 0]
    for var in order:
        i = "abc".index(var)
        n = (gamma.k, gamma.l, gamma.m)[i]
        sign = "+" if n > 0 else "-"
        for _ in range(abs(n)):
            yield sign + var, tuple(pos)
            pos[i] += 1 if n > 0 else -1


def transition_matrix(gamma, order: str = "abc") -> Matrix:
    """Full 2×2 transition matrix composed along the monotone path in ``order``."""
    gamma = ShiftVector.parse(gamma)
    M = IDENTITY
    for direction, at in _path_steps(gamma, order):
        M = mat_mul(elementary_matrix(direction, at), M)
    return M


@dataclass(frozen=True)
class ShiftRelation:
    gamma: ShiftVector
    R: RatFunc
    Q: RatFunc

    def to_json(self) -> dict:
        return {"gamma": list(self.gamma), "R": self.R.to_text(), "Q": self.Q.to_text()}

    @classmethod
    def from_json(cls, d) -> "ShiftRelation":
        return cls(ShiftVector.parse(d["gamma"]), RatFunc.from_text(d["R"]), RatFunc.from_text(d["Q"]))


@lru_cache(maxsize=256)
def _relation_cached(gamma: ShiftVector, order: str) -> ShiftRelation:
    M = transition_matrix(gamma, order)
    return ShiftRelation(gamma, M[0][0], M[0][1])


def shift_relation(gamma, order: str = "abc") -> ShiftRelation:
    return _relation_cached(ShiftVector.parse(gamma), order)


def _line_value(offset, coeff: int, gen):
    """offset + coeff·t as a ring element, or None when the offset is not rational."""
    if offset is None:
        return gen + coeff * t
    if isinstance(offset, AlgNum):
        if not offset.is_rational:
            return None
        offset = offset.to_fraction()
    return poly(Fraction(offset)) + coeff * t


def substitute_line(rel: ShiftRelation, beta0, gamma=None, z0=None, K=None):
    """Restrict (R, Q) to the line β₀ + tγ.

    Entries of ``beta0`` may be rationals, AlgNums, or None (keep the symbol).
    With rational offsets and no ``z0`` the result is a RatFunc pair in
    (t, z).  Otherwise remaining values are substituted exactly and the pair
    comes back as univariate rational functions in t over a number field.
    """
    gamma = rel.gamma if gamma is None else ShiftVector.parse(gamma)
    gens = (a, b, c)
    subs = {}
    pending = {}
    for name, gen, off, k in zip("abc", gens, beta0, gamma):
        v = _line_value(off, k, gen)
        if v is None:  # algebraic offset: keep symbol, substitute a -> a + k t
            subs[name] = gen + k * t
            pending[name] = off
        else:
            subs[name] = v
    R = rel.R.subs(subs)
    Q = rel.Q.subs(subs)
    if not pending and z0 is None:
        return R, Q
    vals = dict(pending)
    if z0 is not None:
        vals["z"] = z0
    return specialize(R, vals, K=K), specialize(Q, vals, K=K)
