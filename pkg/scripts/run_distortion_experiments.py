#!/usr/bin/env python3
"""Run every bundled distortion experiment and write the CSV outputs.

The bundled specs cover: the two-class threshold sweep over a test-mix
schedule, the growing-class-count sweep at fixed per-class accuracy, and the
matrix-mode / point-mode stability runs.
"""

import argparse
from pathlib import Path

from imbindex import lab

SPEC_DIR = Path(__file__).resolve().parent.parent / "specs"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output-dir", default=str(Path(__file__).parent / "out"))
    parser.add_argument(
        "--spec", action="append", default=None,
        help="run only this spec file (repeatable); default: all bundled specs",
    )
    args = parser.parse_args()

    spec_paths = (
        [Path(p) for p in args.spec] if args.spec else sorted(SPEC_DIR.glob("*.json"))
    )
    for path in spec_paths:
        spec = lab.load_spec(path)
        result = lab.run_experiment(spec)
        long_path, summary_path = result.write_csv(args.output_dir)
        print(f"{spec.experiment}:")
        for index_id, value in result.digest().items():
            shown = "UNDEFINED" if value is None else f"{value:.6f}"
            print(f"  {index_id}: mean schedule std = {shown}")
        print(f"  -> {long_path}")
        print(f"  -> {summary_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
