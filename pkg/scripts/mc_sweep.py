#!/usr/bin/env python3
"""Monte Carlo sweep: degenerate moments of S_k and the moment-sum identity.

Prints one row per point with estimate, standard error, exact value and z.
"""

import argparse
import itertools

from stirtool.expectation import McConfig, mc_check_theorem22, mc_estimate_degenerate_moment


def row(label, r):
    flag = "" if r.passed else "  <-- |z| > 5"
    return (f"{label:<28} est={r.estimate:>14.6f} se={r.std_error:>10.6f} "
            f"exact={r.exact_value:>14.6f} z={r.z_score:>+7.3f}{flag}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--chunks", type=int, default=4)
    args = ap.parse_args()

    lambdas = (-0.5, 0.0, 0.25, 0.5, 1.0)
    print("E[(S_k)_{n,lambda}]")
    for k, n, lam in itertools.product((1, 2, 3), (1, 3, 5), lambdas):
        r = mc_estimate_degenerate_moment(McConfig(k, n, lam, args.samples, args.seed, args.chunks))
        print(row(f"k={k} n={n} lambda={lam}", r))

    print("\nmoment-sum side vs unsigned new-type first kind at -lambda")
    for (n, k), lam in itertools.product(((2, 1), (4, 2), (5, 3), (6, 2)), lambdas):
        r = mc_check_theorem22(n, k, lam, args.samples, args.seed, args.chunks)
        print(row(f"n={n} k={k} lambda={lam}", r))


if __name__ == "__main__":
    main()
