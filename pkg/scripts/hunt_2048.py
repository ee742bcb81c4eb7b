"""Find primes X^2 + c of cryptographic size with small X.

Pairs come from the single-chain generator for q1 (default 1471, whose
primorial has 2047 bits) and are lifted to --digits decimal digits; each
pair's window X <= 4 m_c / z is searched for the first prime.

    python3 scripts/hunt_2048.py --pairs 5
"""

import argparse
import time

from quadprimes.arith import DomainError
from quadprimes.density import hunt_primes
from quadprimes.generator import algorithm2, lift_to_digits


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q1", type=int, default=1471)
    ap.add_argument("--digits", type=int, default=616)
    ap.add_argument("--z", type=float, default=4.0)
    ap.add_argument("--pairs", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print("pair,X,bits,seconds")
    done = 0
    for p in algorithm2(args.q1, min(args.pairs * 2, (args.q1 + 1) // 2), args.seed):
        if done == args.pairs:
            break
        try:
            pair = lift_to_digits(p, args.digits)
        except DomainError:
            continue
        t0 = time.perf_counter()
        hits = hunt_primes(pair, args.z, 1)
        X, bits = (hits[0][0], hits[0][1].bit_length()) if hits else ("", "")
        print(f"{done},{X},{bits},{time.perf_counter() - t0:.1f}", flush=True)
        done += 1


if __name__ == "__main__":
    main()
