"""Run every property suite at acceptance size and print a summary table."""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from tscalc.verifier import SUITES, SuiteConfig, run_suite

SIZES = {"identity": 500, "inequality": 1000, "calculus-rules": 300, "closed-forms": 200,
         "sharpness": 200, "gruss": 500, "mode-agreement": 200}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--backend", choices=["rational", "float"], default="rational")
    ap.add_argument("--scale", type=float, default=1.0, help="multiply every suite size")
    ap.add_argument("-o", "--output", type=Path, help="write all suite reports as one JSON list")
    args = ap.parse_args(argv)

    docs, failed = [], False
    print(f"{'suite':<16}{'cases':>7}{'skip':>6}{'viol':>6}  {'max residual':<24}{'min margin':<24}{'secs':>6}")
    for name in SUITES:
        cases = max(1, int(SIZES[name] * args.scale))
        start = time.perf_counter()
        report = run_suite(name, SuiteConfig(seed=args.seed, cases=cases, backend=args.backend))
        secs = time.perf_counter() - start
        r = report.suites[0]
        failed |= bool(r.violations)
        print(f"{name:<16}{r.cases:>7}{r.skipped:>6}{len(r.violations):>6}  {str(r.max_residual):<24.24}{str(r.min_margin):<24.24}{secs:>6.2f}")
        docs.append(report.to_json())
    if args.output:
        args.output.write_text(json.dumps(docs, indent=2) + "\n")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
