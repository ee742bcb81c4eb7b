"""Exact integer kernels: Bezout, modular powers and roots, CRT, primorials.

Python ints are the arbitrary-precision scalar throughout; nothing in this
module touches floating point except the natural-log size returned by
:func:`decimal_size`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional


class DomainError(ValueError):
    """Raised when an argument falls outside an operation's domain."""


class BezoutTriple(NamedTuple):
    g: int
    u: int
    v: int


@dataclass(frozen=True)
class ResidueClass:
    """The class ``value mod modulus`` in canonical form."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise DomainError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def __contains__(self, n: int) -> bool:
        return n % self.modulus == self.value


def ext_gcd(a: int, b: int) -> BezoutTriple:
    """Extended Euclid: return (g, u, v) with a*u + b*v = g = gcd(a, b) >= 0."""
    if a == 0 and b == 0:
        raise DomainError("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return BezoutTriple(old_r, old_u, old_v)


def mod_inverse(a: int, m: int) -> int:
    g, u, _ = ext_gcd(a % m, m)
    if g != 1:
        raise DomainError(f"{a} is not invertible modulo {m}")
    return u % m


def mod_pow(base: int, exp: int, m: int) -> int:
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    if exp < 0:
        raise DomainError("negative exponent")
    return pow(base, exp, m)


def _check_odd_prime_modulus(p: int) -> None:
    # primality of p is the caller's contract; only the cheap part is checked
    if p < 3 or p % 2 == 0:
        raise DomainError(f"expected an odd prime, got {p}")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    _check_odd_prime_modulus(p)
    e = pow(a % p, (p - 1) // 2, p)
    if e == 0:
        return 0
    return 1 if e == 1 else -1


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Smaller square root of ``a`` modulo the odd prime ``p``, or None.

    The returned root s lies in [0, (p-1)/2]; the other root is p - s.
    Tonelli-Shanks, with the a^((p+1)/4) shortcut when p = 3 (mod 4).
    """
    _check_odd_prime_modulus(p)
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        s = pow(a, (p + 1) // 4, p)
    else:
        q, e = p - 1, 0
        while q % 2 == 0:
            q //= 2
            e += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m = e
        c = pow(z, q, p)
        t = pow(a, q, p)
        s = pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m = i
            c = b * b % p
            t = t * c % p
            s = s * b % p
    return min(s, p - s)


def crt_merge(x: ResidueClass, y: ResidueClass) -> ResidueClass:
    """Combine two classes with coprime moduli into one class mod the product."""
    g, u, _ = ext_gcd(x.modulus, y.modulus)
    if g != 1:
        raise DomainError(
            f"moduli {x.modulus} and {y.modulus} are not coprime (gcd {g})"
        )
    # value = x.value + x.modulus * k with k = (y - x) * inv(x.modulus) mod y.modulus
    k = (y.value - x.value) * u % y.modulus
    return ResidueClass(x.value + x.modulus * k, x.modulus * y.modulus)


def crt_tree(classes: Iterable[ResidueClass]) -> ResidueClass:
    """Merge pairwise-coprime classes with a balanced product tree.

    The result is exact, so it does not depend on how the leaves were
    produced (sequentially or by parallel workers).
    """
    level = list(classes)
    if not level:
        return ResidueClass(0, 1)
    while len(level) > 1:
        nxt = [crt_merge(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def product_tree(values: Iterable[int]) -> int:
    level = list(values)
    if not level:
        return 1
    while len(level) > 1:
        nxt = [level[i] * level[i + 1] for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def primorial(n: int) -> int:
    """n# = product of the primes <= n (1 when n < 2)."""
    from .primality import primes_up_to

    if n < 2:
        return 1
    return product_tree(primes_up_to(n))


_LOG10_2 = math.log10(2)


def digit_count(n: int) -> int:
    """Exact number of decimal digits of n >= 1, without str() conversion."""
    if n < 1:
        raise DomainError(f"digit_count needs n >= 1, got {n}")
    k = int((n.bit_length() - 1) * _LOG10_2)
    # k is floor(log10 n) or one less; settle it exactly
    if n >= 10 ** (k + 1):
        k += 1
    elif n < 10**k:
        k -= 1
    return k + 1


def decimal_size(n: int) -> tuple[int, float]:
    """Return (m, s): the digit count of n and its natural-log size m*ln(10)."""
    if n < 1:
        raise DomainError(f"decimal_size needs N >= 1, got {n}")
    m = digit_count(n)
    return m, m * math.log(10)
