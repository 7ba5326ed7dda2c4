"""Run the acceptance criteria and print one line per criterion.

usage: python3 scripts/run_acceptance.py [--seed N] [--suite NAME] [--verbose]
"""
import argparse
import sys
import time

from opuckit import verify as V


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--suite", choices=V.SUITES, default="all")
    ap.add_argument("--verbose", action="store_true", help="print every row")
    args = ap.parse_args()

    t0 = time.perf_counter()
    crits = V.run_suite(args.suite, seed=args.seed)
    for c in crits:
        print(f"criterion {c.number:2d} {'PASS' if c.passed else 'FAIL'}  [{c.suite}] {c.title}")
        for r in c.rows:
            if args.verbose or (not r.passed and not r.supplementary):
                tag = "supp" if r.supplementary else ("ok" if r.passed else "FAIL")
                print(f"    {tag:4s} {r.check:40s} err {r.error:9.3e}  thr {r.threshold:.0e}  {r.params}")
    n_ok = sum(c.passed for c in crits)
    print(f"{n_ok}/{len(crits)} criteria pass ({time.perf_counter() - t0:.1f} s)")
    return 0 if n_ok == len(crits) else 1


if __name__ == "__main__":
    sys.exit(main())
