"""Catalog entry types and their canonical one-line JSON form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..algebra import AlgNum
from ..numerics.expr import Expr, Lin, from_json, to_json


@dataclass(frozen=True)
class PolyCorrection:
    """Polynomial reading at t = offset - n (n = 1, 2, ...) equals RHS times ``factor``."""

    offset: Fraction
    factor: Expr
    condition: str

    def points(self, ns=(1, 2, 3)) -> list:
        return [self.offset - n for n in ns]

    def to_json(self) -> dict:
        return {"offset": str(self.offset), "factor": to_json(self.factor), "condition": self.condition}

    @classmethod
    def from_json(cls, d) -> "PolyCorrection":
        return cls(Fraction(d["offset"]), from_json(d["factor"]), d["condition"])


@dataclass(frozen=True)
class ZParameter:
    """Entries stated for a free argument z: the LHS argument is z or z^2."""

    name: str
    values: tuple  # AlgNum
    argument: str = "z"  # "z" | "z^2"

    def lhs_argument(self, zv: AlgNum) -> AlgNum:
        return zv * zv if self.argument == "z^2" else zv

    def to_json(self) -> dict:
        return {"name": self.name, "values": [v.to_text() for v in self.values],
                "argument": self.argument}

    @classmethod
    def from_json(cls, d) -> "ZParameter":
        return cls(d["name"], tuple(_algnum(v) for v in d["values"]), d["argument"])


def _algnum(text: str) -> AlgNum:
    import sympy

    return AlgNum(sympy.sympify(text.replace("^", "**")))


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    params: tuple  # three Lin
    z0: Optional[AlgNum]
    rhs: Expr
    validity: str = "all t"
    source: str = "classical"  # classical | resonant | sample
    shift: Optional[tuple] = None
    polynomial_correction: tuple = ()  # PolyCorrection
    z_param: Optional[ZParameter] = None
    alternatives: tuple = field(default_factory=tuple)  # (label, Expr): competing readings of a constant
    note: str = ""

    @property
    def offsets(self) -> tuple:
        return tuple(p.nu for p in self.params)

    def lhs_text(self) -> str:
        z = self.z0.to_text() if self.z0 is not None else (
            self.z_param.argument if self.z_param else "?")
        return "F(" + ", ".join(p.to_text() for p in self.params) + f" | {z})"

    def to_json(self) -> dict:
        d = {
            "id": self.id,
            "params": [p.to_json() for p in self.params],
            "z0": self.z0.to_text() if self.z0 is not None else None,
            "rhs": to_json(self.rhs),
            "validity": self.validity,
            "source": self.source,
            "shift": list(self.shift) if self.shift else None,
            "polynomial_correction": [c.to_json() for c in self.polynomial_correction],
            "z_param": self.z_param.to_json() if self.z_param else None,
            "alternatives": [[lab, to_json(e)] for lab, e in self.alternatives],
            "note": self.note,
        }
        return d

    def to_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_json(cls, d) -> "CatalogEntry":
        return cls(
            id=d["id"],
            params=tuple(Lin.from_json(p) for p in d["params"]),
            z0=_algnum(d["z0"]) if d["z0"] is not None else None,
            rhs=from_json(d["rhs"]),
            validity=d["validity"],
            source=d["source"],
            shift=tuple(d["shift"]) if d["shift"] else None,
            polynomial_correction=tuple(PolyCorrection.from_json(c) for c in d["polynomial_correction"]),
            z_param=ZParameter.from_json(d["z_param"]) if d["z_param"] else None,
            alternatives=tuple((lab, from_json(e)) for lab, e in d["alternatives"]),
            note=d["note"],
        )

    @classmethod
    def from_line(cls, line: str) -> "CatalogEntry":
        return cls.from_json(json.loads(line))
