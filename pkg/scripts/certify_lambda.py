#!/usr/bin/env python3
"""Certify the lambda-rational identities as rational-function identities.

For each identity that is rational in the parameter lambda, this computes a
degree bound D from the grid index bounds and re-runs the checks at 2D+2
distinct integer lambda values (clear of 0 and +-1): agreement at that many
points pins down equality of the underlying rational functions.

Usage: python scripts/certify_lambda.py [--nmax N] [--mmax N] [--order N]
"""

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from polyfam.identities import REGISTRY, GridConfig, identity_grid_for, run_identity  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nmax", type=int, default=2)
    parser.add_argument("--mmax", type=int, default=2)
    parser.add_argument("--order", type=int, default=8)
    args = parser.parse_args()

    grid = GridConfig(
        nmax=args.nmax, mmax=args.mmax, nm_sum=args.nmax + args.mmax,
        gf_mmax=min(2, args.mmax), ls=(1, 2), int_alphas=(1, 2),
        frac_alphas=(Fraction(1, 2),), xs=(Fraction(1),),
        order=args.order, certify=True,
    )
    any_failed = False
    for identity_id in sorted(REGISTRY):
        identity = REGISTRY[identity_id]
        _, bound = identity_grid_for(identity, grid)
        if bound is None:
            continue
        started = time.perf_counter()
        reports = run_identity(identity_id, grid)
        failed = sum(r.status == "fail" for r in reports)
        elapsed = time.perf_counter() - started
        status = "FAIL" if failed else "certified"
        any_failed |= bool(failed)
        print(f"{identity_id:<36} D={bound:<4d} lambda-points={2 * bound + 2:<4d} "
              f"checks={len(reports):<6d} {status} ({elapsed:.1f}s)")
    return 1 if any_failed else 0


if __name__ == "__main__":
    sys.exit(main())
