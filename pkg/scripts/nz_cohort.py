"""N_z statistics for a cohort of same-size pairs sharing q1.

Prints the per-z mean, mode, expected 4h/(z ln 10) and the fraction of
pairs with at least one prime, followed by the N_1 distribution.

    python3 scripts/nz_cohort.py --q1 31 --digits 40 --pairs 200
    python3 scripts/nz_cohort.py --q1 727 --digits 301 --pairs 728 --algo 2   # slow
"""

import argparse

from quadprimes.density import nz_stats
from quadprimes.generator import algorithm1, algorithm2, lift_to_digits
from quadprimes.parallel import default_workers


def cohort(q1: int, n: int, digits: int, algo: int) -> list:
    if algo == 1:
        base = algorithm1(q1, n, "odd")
    else:
        per_seed = (q1 + 1) // 2
        base, seed = [], 1
        while len(base) < n:
            base += algorithm2(q1, min(per_seed, n - len(base)), seed)
            seed += 1
    return [lift_to_digits(p, digits) for p in base]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q1", type=int, default=31)
    ap.add_argument("--digits", type=int, default=40)
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--algo", type=int, default=1, choices=[1, 2])
    ap.add_argument("--zs", default="1,2,4,8")
    ap.add_argument("--workers", type=int, default=default_workers())
    args = ap.parse_args()

    pairs = cohort(args.q1, args.pairs, args.digits, args.algo)
    print(f"# {len(pairs)} pairs, q1={args.q1}, {args.digits} digits")
    print("z,I_z_max_X,mean,mode,expected,fraction_with_prime")
    h = None
    first = None
    for z in (float(v) for v in args.zs.split(",")):
        st = nz_stats(pairs, z, h=h, workers=args.workers)
        h = st.h
        first = first or st
        print(f"{z:g},{st.bound},{st.mean:.3f},{st.mode},{st.expected:.3f},{st.fraction_with_prime:.3f}")
    print("N,percent")
    for k, v in first.distribution.items():
        print(f"{k},{v:.2f}")


if __name__ == "__main__":
    main()
