"""Worst float margin of the inequality suite with and without rescaling f.

Without rescaling, random degree-5 polynomials reach values near 1e8 and
the absolute 1e-9 tolerance sits below float resolution at equality cases.
"""

from __future__ import annotations

import argparse

from tscalc.verifier import SuiteConfig, run_suite


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    ap.add_argument("--cases", type=int, default=1000)
    args = ap.parse_args(argv)
    for normalize in (False, True):
        for seed in args.seeds:
            config = SuiteConfig(seed=seed, cases=args.cases, backend="float", normalize_float=normalize)
            r = run_suite("inequality", config).suites[0]
            print(f"normalize={normalize!s:<5} seed={seed}: min margin {r.min_margin:+.3e}, violations {len(r.violations)}")


if __name__ == "__main__":
    main()
