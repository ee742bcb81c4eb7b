"""Cofactor progressions of E_c and their divisor sub-progressions.

If A1 divides some element of E_c, the cofactors (X^2 + c) / A1 along
X = X0 + 2*A1*n (eps = +1) or X = 2*A1*n - X0 (eps = -1) form the quadratic
progression  value(n) = 4n(A1 n + eps X0) + B0.  The indices n at which a
further integer A divides value(n) split into arithmetic sub-progressions,
one family per divisor a of A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .arith import DomainError, mod_inverse
from .ecset import EcParams, FirstMultiple, first_multiple
from .primality import DEFAULT_POLICY, PrimalityPolicy, is_prime
from .parallel import parallel_map, split_range


@dataclass(frozen=True)
class CofactorProgression:
    A1: int
    c: int
    eps: int
    anchor: FirstMultiple

    @property
    def X0(self) -> int:
        return self.anchor.X0

    @property
    def B0(self) -> int:
        return self.anchor.B0

    @property
    def coefficients(self) -> tuple[int, int, int]:
        """(4*A1, 4*eps*X0, B0): value(n) = 4*A1*n^2 + 4*eps*X0*n + B0."""
        return 4 * self.A1, 4 * self.eps * self.X0, self.B0

    def value(self, n: int) -> int:
        return 4 * n * (self.A1 * n + self.eps * self.X0) + self.B0

    def x_of(self, n: int) -> int:
        """The X with X^2 + c = A1 * value(n)."""
        return abs(self.X0 + self.eps * 2 * self.A1 * n)


@dataclass(frozen=True)
class SubProgression:
    a: int
    n0: int
    step: int

    def terms(self, limit: int) -> range:
        """Indices n0 + k*step that are <= limit."""
        return range(self.n0, limit + 1, self.step)


def cofactor_progression(A1: int, ec: EcParams, eps: int) -> CofactorProgression:
    if eps not in (1, -1):
        raise DomainError(f"eps must be +1 or -1, got {eps}")
    anchor = first_multiple(A1, ec)
    if anchor is None:
        raise DomainError(f"{A1} divides no element of E_{ec.c}")
    return CofactorProgression(A1, ec.c, eps, anchor)


def is_irreducible(cp: CofactorProgression) -> bool:
    return math.gcd(cp.A1, cp.X0, cp.B0) == 1


def _divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _crt_general(r1: int, m1: int, r2: int, m2: int) -> Optional[tuple[int, int]]:
    """Solve n = r1 (mod m1), n = r2 (mod m2) for arbitrary moduli."""
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    if m2 // g == 1:
        return r1 % lcm, lcm
    k = (r2 - r1) // g * mod_inverse(m1 // g, m2 // g) % (m2 // g)
    return (r1 + m1 * k) % lcm, lcm


def first_divisible_index(cp: CofactorProgression, A: int) -> Optional[int]:
    """Smallest n >= 0 with A | value(n); value mod A has period A in n."""
    for n in range(A):
        if cp.value(n) % A == 0:
            return n
    return None


def literal_conditions(cp: CofactorProgression, A: int, a: int, n0: int) -> bool:
    """A variant of the existence conditions whose third test lacks u on eps*X0.

    Kept for comparison only: without the factor u the third condition
    disagrees with direct CRT solvability for some (A1, c, A, a).
    """
    b = A // a
    g = math.gcd(cp.A1, b)
    w = cp.A1 * n0 + cp.eps * cp.X0
    if w % g:
        return False
    bp = b // g
    u = mod_inverse(cp.A1 // g, bp) if bp > 1 else 0
    if (cp.A1 * u - g) % b:
        return False
    return ((cp.A1 * u + g) * n0 + cp.eps * cp.X0) % math.gcd(cp.A1 * a, b) == 0


def divisor_subprogressions(cp: CofactorProgression, A: int) -> list[SubProgression]:
    """All sub-progressions n = n_{A,a}(0) + k*step of indices with A | value(n).

    For each divisor a of A (b = A/a, g = gcd(A1, b)) the index n must satisfy
    n = n0 (mod a) and A1*n = -(A1*n0 + eps*X0) (mod b).  The second congruence
    is solvable iff g | A1*n0 + eps*X0; the pair is compatible iff
    gcd(a*A1, b) | (A1*u + g)*n0 + u*eps*X0, and the solution is unique
    modulo A / gcd(a*A1, b).  The a = A branch (b = 1) always exists with
    step A.
    """
    if A < 2:
        raise DomainError(f"A must be >= 2, got {A}")
    n0 = first_divisible_index(cp, A)
    if n0 is None:
        return []
    out = []
    for a in _divisors(A):
        b = A // a
        g = math.gcd(cp.A1, b)
        w = cp.A1 * n0 + cp.eps * cp.X0
        if w % g:
            continue
        bp = b // g
        u = mod_inverse(cp.A1 // g, bp) if bp > 1 else 0
        if ((cp.A1 * u + g) * n0 + u * cp.eps * cp.X0) % math.gcd(cp.A1 * a, b):
            continue
        n1 = (-u * (w // g)) % bp
        sol = _crt_general(n0, a, n1, bp)
        # compatibility was established above; the solve cannot fail
        assert sol is not None
        start, step = sol
        assert step == A // math.gcd(a * cp.A1, b)
        out.append(SubProgression(a, start, step))
    return out


def definition_step_disagreements(cp: CofactorProgression, A: int) -> list[int]:
    """Divisors a where A/gcd(a*A1, A/a) differs from A/gcd(a, A/a)."""
    return [sp.a for sp in divisor_subprogressions(cp, A)
            if sp.step != A // math.gcd(sp.a, A // sp.a)]


def _count_chunk(args) -> int:
    cp, lo, hi, policy, x_bound = args
    return sum(1 for n in range(lo, hi)
               if (x_bound is None or cp.x_of(n) < x_bound) and is_prime(cp.value(n), policy))


def _count(cp, lo, hi, policy, workers, x_bound=None) -> int:
    tasks = [(cp, a, b, policy, x_bound) for a, b in split_range(lo, hi, workers * 4)]
    return sum(parallel_map(_count_chunk, tasks, workers))


def count_cofactor_primes(cp: CofactorProgression, n_max: int,
                          policy: PrimalityPolicy = DEFAULT_POLICY,
                          workers: int = 1) -> int:
    """Number of n in [0, n_max] with value(n) prime."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    return _count(cp, 0, n_max + 1, policy, workers)


def count_cofactor_primes_window(cp: CofactorProgression, x: int,
                                 policy: PrimalityPolicy = DEFAULT_POLICY,
                                 workers: int = 1) -> int:
    """Primes among the cofactors of the elements of E_c^(x) (X < 2x + 1).

    For A1 = 5, c = 1, eps = +1 (X = 10n + 2) this is exactly the first
    floor(x/5) terms when 5 | x.
    """
    bound = 2 * x + 1
    # x_of(n) >= 2*A1*n - X0, so no index past this can qualify
    n_hi = (bound + cp.X0) // (2 * cp.A1) + 1
    return _count(cp, 0, n_hi, policy, workers, bound)
