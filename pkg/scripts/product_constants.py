"""Truncated-product constants h_c for small c at increasing prime limits.

    python3 scripts/product_constants.py --cs 1,2,3,5,7 --limit 4000000
"""

import argparse
import csv
import sys

from quadprimes.density import hc_product_checkpoints


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cs", default="1,3,5", help="comma-separated c values")
    ap.add_argument("--limit", type=int, default=4_000_000)
    args = ap.parse_args()

    limits = [10**k for k in range(3, 8) if 10**k < args.limit] + [args.limit]
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["c"] + [f"h@{lim}" for lim in limits])
    for c in (int(v) for v in args.cs.split(",")):
        w.writerow([c] + [f"{h:.7f}" for _, h in hc_product_checkpoints(c, limits)])


if __name__ == "__main__":
    main()
