"""Rewrite the packaged identities.jsonl from the built-in entry definitions."""
from hypgamma.catalog import CATALOG_FILE, builtin_entries, write_catalog

if __name__ == "__main__":
    write_catalog()
    print(f"wrote {len(builtin_entries())} entries to {CATALOG_FILE}")
