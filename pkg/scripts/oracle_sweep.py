"""Closed form vs. enumeration over full parameter sweeps, broken down by |A|.

    python scripts/oracle_sweep.py --m-max 4
    python scripts/oracle_sweep.py --family f2 --m-max 5 --json sweep.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from z4scx.codegen import Family
from z4scx.verify import check_instance, parameter_space


@dataclass
class SweepConfig:
    families: tuple[Family, ...] = tuple(Family)
    m_min: int = 2
    m_max: int = 4


@dataclass
class FamilySummary:
    family: str
    checked: int = 0
    degenerate: int = 0
    failures: dict = field(default_factory=dict)  # "check |A|=a" -> count
    first: dict = field(default_factory=dict)  # check -> description
    seconds: float = 0.0


def run(config: SweepConfig) -> list[FamilySummary]:
    out = []
    for family in config.families:
        summary = FamilySummary(family.value)
        counts: Counter = Counter()
        t0 = time.perf_counter()
        for m in range(config.m_min, config.m_max + 1):
            for A, B, C in parameter_space(family, m):
                found, degenerate = check_instance(family, m, A, B, C)
                summary.checked += 1
                summary.degenerate += degenerate
                for x in found:
                    counts[f"{x.check} |A|={len(A)}"] += 1
                    summary.first.setdefault(x.check, x.describe())
        summary.seconds = round(time.perf_counter() - t0, 2)
        summary.failures = dict(sorted(counts.items()))
        out.append(summary)
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--family", choices=[f.value for f in Family])
    parser.add_argument("--m-min", type=int, default=2)
    parser.add_argument("--m-max", type=int, default=4)
    parser.add_argument("--json", help="write the summaries here")
    args = parser.parse_args()

    families = (Family(args.family),) if args.family else tuple(Family)
    summaries = run(SweepConfig(families, args.m_min, args.m_max))
    for s in summaries:
        status = "clean" if not s.failures else "MISMATCHES"
        print(f"{s.family}: {s.checked} sets, {s.degenerate} degenerate, {s.seconds}s, {status}")
        for key, n in s.failures.items():
            print(f"    {key}: {n}")
        for check, text in s.first.items():
            print(f"    first {check}: {text}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([asdict(s) for s in summaries], fh, indent=2)
    return 0 if all(not s.failures for s in summaries) else 1


if __name__ == "__main__":
    sys.exit(main())
