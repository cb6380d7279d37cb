"""Numerically verify the whole identity catalog and summarize per entry."""
import argparse
import json
import time

from hypgamma.catalog import load_catalog, verify_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prec", type=int, default=128)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--json", help="write full reports here")
    args = ap.parse_args()
    t0 = time.time()
    reports = verify_all(load_catalog(), args.prec, args.jobs)
    for r in reports:
        extra = ""
        if r.polynomial_checks:
            extra += f" poly={sum(c.passed for c in r.polynomial_checks)}/{len(r.polynomial_checks)}"
        if r.alternatives:
            extra += " " + ",".join(f"[{k}]={v}" for k, v in r.alternatives.items())
        print(f"{r.verdict:7s} {r.max_discrepancy():9.2e}  {r.entry_id}{extra}")
    bad = [r.entry_id for r in reports if r.verdict != "pass"]
    print(f"{len(reports) - len(bad)}/{len(reports)} pass in {time.time() - t0:.1f}s at {args.prec} bits")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2, sort_keys=True)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
