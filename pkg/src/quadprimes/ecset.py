"""The sets E_c = {X^2 + c : X = 2j + r}, r = 1 - (c mod 2), indexed by j.

Every element is odd.  For an odd prime p the multiples of p in E_c sit on
at most two arithmetic progressions of indices with common difference p,
anchored at the first multiple (:func:`first_multiple`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from .arith import DomainError, ResidueClass, crt_tree, decimal_size, legendre, sqrt_mod
from .primality import is_prime


@dataclass(frozen=True)
class EcParams:
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise DomainError(f"c must be >= 1, got {self.c}")

    @property
    def r(self) -> int:
        return 1 - (self.c & 1)

    @cached_property
    def size(self) -> tuple[int, float]:
        return decimal_size(self.c)

    @property
    def m(self) -> int:
        return self.size[0]

    @property
    def s(self) -> float:
        return self.size[1]

    def x_of(self, j: int) -> int:
        return 2 * j + self.r


@dataclass(frozen=True)
class FirstMultiple:
    A: int
    j0: int
    X0: int
    B0: int


@dataclass(frozen=True)
class IndexProgressionPair:
    start1: int
    start2: int
    step: int
    merged: bool

    def contains(self, j: int) -> bool:
        return (j - self.start1) % self.step == 0 or (j - self.start2) % self.step == 0


@dataclass(frozen=True)
class QuadraticForm:
    a2: int
    a1: int
    a0: int

    def __call__(self, x: int) -> int:
        return (self.a2 * x + self.a1) * x + self.a0

    @property
    def discriminant(self) -> int:
        return self.a1 * self.a1 - 4 * self.a2 * self.a0


def eval_element(ec: EcParams, j: int) -> int:
    """The j-th element (2j + r)^2 + c of E_c."""
    x = 2 * j + ec.r
    return x * x + ec.c


def t_p(p: int, c: int) -> int:
    """Number of roots of X^2 + c modulo the odd prime p (0, 1 or 2)."""
    return legendre(-c, p) + 1


def _first_multiple_scan(A: int, ec: EcParams) -> Optional[FirstMultiple]:
    # X^2 + c mod A has period A in X; X of fixed parity covers [0, 2A)
    cA = ec.c % A
    for x in range(ec.r, 2 * A, 2):
        if (x * x + cA) % A == 0:
            return FirstMultiple(A, (x - ec.r) // 2, x, (x * x + ec.c) // A)
    return None


def first_multiple(A: int, ec: EcParams) -> Optional[FirstMultiple]:
    """Smallest X >= 0 of parity r with A | X^2 + c, as a FirstMultiple.

    For prime A the two square roots of -c are lifted to their classes mod
    2A; composite A falls back to scanning one full period.
    """
    if A < 3 or A % 2 == 0:
        raise DomainError(f"A must be odd and >= 3, got {A}")
    if not is_prime(A):
        return _first_multiple_scan(A, ec)
    s = sqrt_mod(-ec.c, A)
    if s is None:
        return None
    lifts = [x if x % 2 == ec.r else x + A for x in {s, (A - s) % A}]
    x0 = min(lifts)
    return FirstMultiple(A, (x0 - ec.r) // 2, x0, (x0 * x0 + ec.c) // A)


def index_progressions(p: int, ec: EcParams) -> Optional[IndexProgressionPair]:
    """Both index progressions {j : p | (2j + r)^2 + c}, or None if empty."""
    fm = first_multiple(p, ec)
    if fm is None:
        return None
    other = (p - fm.j0 - ec.r) % p
    lo, hi = sorted((fm.j0, other))
    return IndexProgressionPair(lo, hi, p, ec.c % p == 0)


def sieve_window(ec: EcParams, j_lo: int, j_hi: int, primes: Iterable[int]) -> np.ndarray:
    """Survivor mask over indices j_lo <= j < j_hi after removing multiples.

    Uses the two index progressions of every odd prime in ``primes``.  An
    element equal to the sieving prime itself is kept.
    """
    n = max(0, j_hi - j_lo)
    alive = np.ones(n, dtype=bool)
    if n == 0:
        return alive
    for p in primes:
        if p == 2:
            continue
        prog = index_progressions(p, ec)
        if prog is None:
            continue
        for start in {prog.start1, prog.start2}:
            first = j_lo + (start - j_lo) % p
            alive[first - j_lo :: p] = False
            # the sieving prime itself can be an element only for tiny c
            if ec.c <= p:
                j = first
                while j < j_hi and eval_element(ec, j) <= p:
                    if eval_element(ec, j) == p:
                        alive[j - j_lo] = True
                    j += p
    return alive


def _allowed_residues(p: int, c: int) -> list[int]:
    return [x for x in range(p) if (x * x + c) % p]


def coprime_residue_forms(ec: EcParams, F: Iterable[int]) -> list[tuple[int, QuadraticForm]]:
    """Residues b mod 2p_F (parity r) with X = b (mod 2p_F) coprime to F.

    Each b is paired with the expanded form (2p_F x + b)^2 + c.  The primes
    of F must all divide some element of E_c.
    """
    primes = sorted(set(F))
    for p in primes:
        if t_p(p, ec.c) == 0:
            raise DomainError(f"{p} never divides an element of E_{ec.c}; drop it from F")
    pF = math.prod(primes)
    per_prime = [_allowed_residues(p, ec.c) for p in primes]
    # mixed-radix enumeration of CRT combinations, then sort
    bs = [ResidueClass(ec.r, 2)]
    for p, allowed in zip(primes, per_prime):
        bs = [crt_tree([cls, ResidueClass(x, p)]) for cls in bs for x in allowed]
    out = []
    for cls in sorted(bs, key=lambda k: k.value):
        b = cls.value
        out.append((b, QuadraticForm(4 * pF * pF, 4 * b * pF, b * b + ec.c)))
    return out


def density_exact(ec: EcParams, F: Iterable[int]) -> Fraction:
    """Exact density of elements coprime to every p in F: prod (1 - t_p/p)."""
    d = Fraction(1)
    for p in sorted(set(F)):
        d *= Fraction(p - t_p(p, ec.c), p)
    return d
