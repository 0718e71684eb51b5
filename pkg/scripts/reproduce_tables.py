"""Rebuild the four catalogued comparison tables and print a row-by-row check.

    python scripts/reproduce_tables.py --out reports
"""

from __future__ import annotations

import argparse
import sys

from z4scx.registry import load_best_known, write_reference_reports


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="reports")
    parser.add_argument("--db", help="best-known CSV (default: bundled snapshot)")
    args = parser.parse_args()

    rep = write_reference_reports(args.out, load_best_known(args.db))
    for name, recs in rep.tables.items():
        kinds: dict[str, int] = {}
        for r in recs:
            kinds[r.verdict.kind] = kinds.get(r.verdict.kind, 0) + 1
        print(f"{name:14s} {len(recs):3d} rows  {kinds}")
    for problem in rep.mismatches:
        print("MISMATCH", problem)
    print(f"written to {args.out}/")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
