"""Prime enumeration and primality testing.

``is_prime`` is deterministic below :data:`DETERMINISTIC_LIMIT` (fixed
Miller-Rabin bases).  Above it, it runs seeded random-base Miller-Rabin
rounds followed, by default, by a strong Lucas test (BPSW style).  Bases are
drawn from a generator seeded by ``(policy.rng_seed, n)``, so a verdict never
depends on call order or on which worker evaluated it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

# All composites below this bound fail a strong test to one of the first
# seven prime bases (the smallest strong pseudoprime to bases 2..17 is
# 341 550 071 728 321).
DETERMINISTIC_LIMIT = 341_550_071_728_321
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17)

_SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
                 67, 71, 73, 79, 83, 89, 97)


@dataclass(frozen=True)
class PrimalityPolicy:
    miller_rabin_rounds: int = 64
    use_lucas_stage: bool = True
    rng_seed: int = 0

    def __post_init__(self):
        if self.miller_rabin_rounds < 1:
            raise ValueError("miller_rabin_rounds must be >= 1")

    def reseeded(self, delta: int = 1) -> "PrimalityPolicy":
        """Same policy with a different base stream (used for re-verification)."""
        return PrimalityPolicy(self.miller_rabin_rounds, self.use_lucas_stage,
                               (self.rng_seed + delta) & 0xFFFF_FFFF_FFFF_FFFF)


DEFAULT_POLICY = PrimalityPolicy()


def prime_sieve(limit: int) -> np.ndarray:
    """Boolean array ``s`` of length limit+1 with s[n] true iff n is prime."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    s = np.ones(limit + 1, dtype=bool)
    s[: min(2, limit + 1)] = False
    for i in range(2, math.isqrt(limit) + 1):
        if s[i]:
            s[i * i :: i] = False
    return s


def prime_array(limit: int) -> np.ndarray:
    """Primes <= limit as an int64 array (including 2)."""
    return np.flatnonzero(prime_sieve(limit))


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit in increasing order, 2 included."""
    if limit < 2:
        return []
    return prime_array(limit).tolist()


def odd_primes_below(n: int) -> list[int]:
    """Odd primes p with 3 <= p < n."""
    return [p for p in primes_up_to(n - 1) if p != 2]


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameters."""
    r = math.isqrt(n)
    if r * r == n:
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    # binary ladder for U_d, V_d, Q^d
    U, V, Qk = 0, 2, 1
    inv2 = (n + 1) // 2
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int, policy: PrimalityPolicy = DEFAULT_POLICY) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, a, d, s) for a in _DETERMINISTIC_BASES)
    # base 2 first: rejects almost every composite before any RNG work
    if not _strong_probable_prime(n, 2, d, s):
        return False
    rng = random.Random(f"{policy.rng_seed}:{n}")
    for _ in range(policy.miller_rabin_rounds - 1):
        a = rng.randrange(3, n - 1)
        if not _strong_probable_prime(n, a, d, s):
            return False
    if policy.use_lucas_stage:
        return _strong_lucas(n)
    return True


def next_prime(n: int, policy: PrimalityPolicy = DEFAULT_POLICY) -> int:
    """Smallest prime strictly greater than n."""
    k = max(n + 1, 2)
    while not is_prime(k, policy):
        k += 1
    return k
