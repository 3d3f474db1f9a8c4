"""``stirtool`` command line.

Exit codes: 0 pass, 1 failed check or |z| above threshold, 2 usage error.
Machine-readable output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .checks import CHECKS, run_check
from .expectation import Z_THRESHOLD, McConfig, mc_estimate_degenerate_moment
from .stirling import Family, build_triangle
from .tables import FORMATS, render

DEFAULT_MAX_N_CAP = 64


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stirtool", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="print a triangle of one number family")
    t.add_argument("--family", required=True, choices=[f.value for f in Family])
    t.add_argument("--max-n", type=int, required=True)
    t.add_argument("--format", default="csv", choices=FORMATS)
    t.add_argument("--max-n-cap", type=int, default=DEFAULT_MAX_N_CAP, help=argparse.SUPPRESS)

    c = sub.add_parser("check", help="run a named identity check")
    c.add_argument("--name", required=True, choices=list(CHECKS))
    c.add_argument("--max-n", type=int, required=True)

    m = sub.add_parser("mc", help="Monte Carlo estimate of E[(S_k)_{n,lambda}]")
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--lambda", dest="lam", type=float, required=True)
    m.add_argument("--samples", type=int, required=True)
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--chunks", type=int, default=1)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.command == "table":
        if not 0 <= args.max_n <= args.max_n_cap:
            print(f"stirtool: --max-n must be in 0..{args.max_n_cap}", file=sys.stderr)
            return 2
        sys.stdout.write(render(build_triangle(args.family, args.max_n), args.format))
        return 0

    if args.command == "check":
        if args.max_n < 1:
            print("stirtool: --max-n must be at least 1", file=sys.stderr)
            return 2
        result = run_check(args.name, args.max_n)
        print(result.summary())
        return 0 if result.passed else 1

    try:
        cfg = McConfig(args.k, args.n, args.lam, args.samples, args.seed, args.chunks)
    except ValueError as e:
        print(f"stirtool: {e}", file=sys.stderr)
        return 2
    report = mc_estimate_degenerate_moment(cfg)
    print(
        f"k={cfg.k} n={cfg.n} lambda={cfg.lambda_value!r} estimate={report.estimate!r} "
        f"std_error={report.std_error!r} exact={report.exact_value!r} "
        f"z={report.z_score!r} samples={report.samples_used}",
        file=sys.stderr,
    )
    out = {
        "k": cfg.k,
        "n": cfg.n,
        "lambda": cfg.lambda_value,
        "seed": cfg.seed,
        **report.to_dict(),
        "passed": report.passed,
    }
    print(json.dumps(out))
    return 0 if abs(report.z_score) <= Z_THRESHOLD else 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
