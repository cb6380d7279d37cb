"""Run configuration with environment overrides (HYPGAMMA_PREC, HYPGAMMA_JOBS, HYPGAMMA_SEED)."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

FORMATS = ("json", "latex", "text")


@dataclass(frozen=True)
class Config:
    precision_bits: int = 192
    algnum_degree_ceiling: int = 4
    output_format: str = "json"
    jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be at least 64")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.algnum_degree_ceiling < 1:
            raise ValueError("algnum_degree_ceiling must be positive")
        if self.output_format not in FORMATS:
            raise ValueError(f"output_format must be one of {FORMATS}")

    @classmethod
    def from_env(cls, env=None, **overrides) -> "Config":
        env = os.environ if env is None else env
        base = {}
        for key, field_name in (("HYPGAMMA_PREC", "precision_bits"), ("HYPGAMMA_JOBS", "jobs"),
                                ("HYPGAMMA_SEED", "seed")):
            if env.get(key):
                base[field_name] = int(env[key])
        cfg = cls(**base)
        given = {k: v for k, v in overrides.items() if v is not None}
        return replace(cfg, **given) if given else cfg
