#!/usr/bin/env python3
"""Print the n <= 6 tables of both new-type families and run every identity check."""

import argparse
import sys
import time

from stirtool.checks import CHECKS, run_check
from stirtool.stirling import build_triangle
from stirtool.tables import to_latex


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--table-n", type=int, default=6)
    ap.add_argument("--check-n", type=int, default=12)
    args = ap.parse_args()

    for family in ("ns1u", "ns2"):
        print(f"% {family}, n <= {args.table_n}")
        print(to_latex(build_triangle(family, args.table_n)))

    failed = 0
    for name in CHECKS:
        start = time.perf_counter()
        result = run_check(name, args.check_n)
        print(f"{result.summary()}  ({time.perf_counter() - start:.2f}s)")
        failed += not result.passed
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
