#!/usr/bin/env python3
"""Per-level and subset statistics of the blocked hosts across seeds.

Reports, for each seed, whether every level count falls in the
(1 +- eps) 2^(d-1) m^2 band and how many sampled cross-block subset checks
meet the (1 + eps) density bound.  Failures are recorded, not asserted:
both properties are promised only for large m.

Usage: python3 scripts/host_statistics.py [--m 64] [--d 4] [--eps 0.1]
"""

import argparse
import sys

from relturan.hosts import generate_host, verify_host


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=64)
    ap.add_argument("--d", type=int, default=4)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--checks", type=int, default=50)
    args = ap.parse_args()

    print(f"{'seed':>5} {'levels_ok':>9} {'pairs_ok':>9} {'worst_excess':>12}")
    for seed in range(args.seeds):
        host = generate_host(args.m, args.d, seed)
        rep = verify_host(host, args.eps, args.checks, seed=seed)
        ok = sum(c.ok for c in rep.pair_checks)
        print(f"{seed:>5} {str(rep.levels_ok):>9} {ok:>6}/{args.checks:<3}"
              f" {rep.worst_pair_excess:>11.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
