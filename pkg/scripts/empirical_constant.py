"""Running empirical constant h_emp(X) for lifted pairs, next to the product h_c.

For each q1 the first generated pair is lifted to --digits decimal digits,
primes X^2 + c are counted up to --x-max, and h_emp = m_c ln(10) count / X
is reported at every checkpoint.  Reaching 301-digit c and X up to 4e7 is
possible with --digits 301 --x-max 40000000 but takes many CPU hours.

    python3 scripts/empirical_constant.py --q1s 7,13,31 --digits 40 --x-max 200000
"""

import argparse

from quadprimes.density import count_primes_ec, hc_product
from quadprimes.ecset import EcParams
from quadprimes.generator import algorithm1, lift_to_digits
from quadprimes.parallel import default_workers


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q1s", default="7,13,31")
    ap.add_argument("--digits", type=int, default=40)
    ap.add_argument("--x-max", type=int, default=200_000)
    ap.add_argument("--step", type=int, default=20_000)
    ap.add_argument("--h-limit", type=int, default=10**6)
    ap.add_argument("--workers", type=int, default=default_workers())
    args = ap.parse_args()

    print("q1,c,X,count,d_per_X,h_emp,h_product")
    for q1 in (int(v) for v in args.q1s.split(",")):
        pair = lift_to_digits(algorithm1(q1, 1, "odd")[0], args.digits)
        h = hc_product(pair.c, args.h_limit)
        rep = count_primes_ec(pair.c, args.x_max, args.step, workers=args.workers)
        for row in rep.checkpoint_rows(EcParams(pair.c).s):
            print(f"{q1},{pair.c},{row['X']},{row['count']},{row['d_per_X']:.6f},"
                  f"{row['h_emp']:.4f},{h:.4f}", flush=True)


if __name__ == "__main__":
    main()
