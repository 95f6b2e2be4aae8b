#!/usr/bin/env python3
"""Run every verification suite and survey, write reports, print a summary.

Usage: run_verification.py [--n-max N] [--threads T] [--out-dir DIR]
"""

import argparse
import json
import sys
from pathlib import Path

from qpkit.harness import ALL_SUITES


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=6)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out-dir", default="reports")
    args = ap.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    failed = False
    for name, fn in ALL_SUITES.items():
        kwargs = {"threads": args.threads}
        n_max = args.n_max
        if name == "color-removal" and n_max > 8:
            n_max = 8
        report = fn(n_max, **kwargs)
        path = out_dir / f"{name}.json"
        path.write_text(report.to_json())
        status = "ok" if report.passed else "VIOLATIONS"
        extra = ""
        if report.findings:
            interesting = {k: v for k, v in report.findings.items()
                           if isinstance(v, (int, bool))}
            extra = "  " + json.dumps(interesting)
        print(f"{name:<20} n<={n_max}  scanned={report.graphs_scanned:<5} "
              f"{status}{extra}")
        if not report.passed:
            failed = True
    print(f"reports written to {out_dir}/")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
