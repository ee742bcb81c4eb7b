"""Prime counts in the cofactor progression 4n(5n + 2) + 1 and a power-law fit.

Counts primes X^2 + 1 = 5 * value(n) with X = 10n + 2 < 2x + 1 for each x,
then fits count = a * x^b both in y-space and in log-log space.  The
default x values run in a few minutes; pass larger ones with --xs.

    python3 scripts/cofactor_growth.py --xs 1e4,5e4,1e5,5e5,1e6 --workers 4
"""

import argparse
import time

from quadprimes.density import power_law_fit
from quadprimes.divisors import cofactor_progression, count_cofactor_primes_window
from quadprimes.ecset import EcParams
from quadprimes.parallel import default_workers


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--xs", default="1e4,5e4,1e5,5e5,1e6")
    ap.add_argument("--a1", type=int, default=5)
    ap.add_argument("--c", type=int, default=1)
    ap.add_argument("--eps", type=int, default=1, choices=[1, -1])
    ap.add_argument("--workers", type=int, default=default_workers())
    args = ap.parse_args()

    cp = cofactor_progression(args.a1, EcParams(args.c), args.eps)
    points = []
    print("x,count,seconds")
    for x in (int(float(v)) for v in args.xs.split(",")):
        t0 = time.perf_counter()
        n = count_cofactor_primes_window(cp, x, workers=args.workers)
        points.append((x, n))
        print(f"{x},{n},{time.perf_counter() - t0:.1f}", flush=True)
    if len(points) >= 3:
        for method in ("nonlinear", "loglog"):
            a, b, R = power_law_fit(points, method)
            print(f"# {method}: count ~ {a:.7f} * x^{b:.7f}  R={R:.9f}")


if __name__ == "__main__":
    main()
