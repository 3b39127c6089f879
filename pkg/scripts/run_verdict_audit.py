#!/usr/bin/env python3
"""Audit all thirteen indices against the three conditions and check the
verdicts against the built-in expected table.

Writes the full JSON report next to this script unless --output is given.
"""

import argparse
import sys
import time
from pathlib import Path

from imbindex import audit
from imbindex.registry import default_seed


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=audit.DEFAULT_TRIALS)
    parser.add_argument("--seed", type=int, default=default_seed())
    parser.add_argument("--output", default=str(Path(__file__).parent / "verdict_audit.json"))
    args = parser.parse_args()

    start = time.perf_counter()
    reports = audit.audit_all(trials=args.trials, seed=args.seed)
    elapsed = time.perf_counter() - start

    width = max(len(r.index) for r in reports)
    print(f"{'index':{width}s}  condition1   condition2        condition3")
    for report in reports:
        c1, c2, c3 = report.verdict_row()
        print(f"{report.index:{width}s}  {c1:11s}  {c2:16s}  {c3}")

    Path(args.output).write_text(audit.reports_to_json(reports) + "\n")
    print(f"\nreport written to {args.output} ({elapsed:.1f}s)")

    problems = audit.conformance_mismatches(reports)
    if problems:
        for problem in problems:
            print(f"MISMATCH {problem}", file=sys.stderr)
        return 3
    print("all verdicts match the expected table")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
