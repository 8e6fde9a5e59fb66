"""Run the bounded 8_5 search over a grid of bounds and tabulate the outcome.

    python scripts/run_verify.py --bounds 0:0 1:4 2:4 2:6 2:8 --jobs 2 --out results/verify.json
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from bridgerect.harness import HarnessConfig, verify_85


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bounds", nargs="+", default=["0:0", "1:4", "2:4", "2:6", "2:8"],
                    help="rewires:max_crossings pairs")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", help="write all reports as one JSON list")
    args = ap.parse_args()

    rows = []
    print(f"{'d':>2} {'N':>3} {'classes':>8} {'rc fail':>8} {'certs':>6} {'except':>7} {'time s':>8}")
    for spec in args.bounds:
        d, n = (int(x) for x in spec.split(":"))
        rep = verify_85(HarnessConfig(rewires=d, max_crossings=n, jobs=args.jobs))
        exceptions = (rep.systems_without_wave + rep.normal_form_exceptions + rep.unclassified_pairs
                      + rep.oracle_disagreements + rep.euler_failures)
        print(f"{d:>2} {n:>3} {rep.classes_enumerated:>8} {rep.rc_failures:>8} {rep.certificates:>6} "
              f"{exceptions:>7} {rep.wall_time:>8.1f}{'  TRUNCATED' if rep.truncated else ''}")
        rows.append(json.loads(rep.to_json()))
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(json.dumps(rows, indent=2), encoding="utf-8")


if __name__ == "__main__":
    main()
