"""Identity catalog: stored entries plus the numerical verification harness."""
from __future__ import annotations

from pathlib import Path

from .builtin import builtin_entries
from .entry import CatalogEntry, PolyCorrection, ZParameter
from .harness import (DEFAULT_SAMPLES, VerificationReport, polynomial_reading, reproduce_entry,
                      sample_points, verify_all, verify_entry)

CATALOG_FILE = Path(__file__).with_name("identities.jsonl")


def dump_lines(entries) -> str:
    return "".join(e.to_line() + "\n" for e in entries)


def write_catalog(path: Path = CATALOG_FILE, entries=None) -> None:
    path.write_text(dump_lines(builtin_entries() if entries is None else entries), encoding="utf-8")


def load_catalog(path: Path = CATALOG_FILE) -> list:
    lines = path.read_text(encoding="utf-8").splitlines()
    return [CatalogEntry.from_line(ln) for ln in lines if ln.strip()]


def entry_by_id(entry_id: str, entries=None) -> CatalogEntry:
    for e in entries if entries is not None else load_catalog():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


__all__ = [
    "CatalogEntry", "PolyCorrection", "ZParameter", "VerificationReport", "DEFAULT_SAMPLES",
    "builtin_entries", "load_catalog", "write_catalog", "dump_lines", "entry_by_id",
    "verify_entry", "verify_all", "sample_points", "polynomial_reading", "reproduce_entry",
    "CATALOG_FILE",
]
