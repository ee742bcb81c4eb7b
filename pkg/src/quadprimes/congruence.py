"""Residue classes of c that fix which small primes divide elements of E_c.

For the first odd primes F = {3, 5, ..., p_M}, the classes c mod 2*p_F with
(-c/p) = -1 for every p in F (no p in F divides any X^2 + c) are built one
prime at a time: each step combines a class mod 2*p_F(m) with a residue
mod p_{m+1} through a single precomputed Bezout coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .arith import DomainError, ResidueClass, ext_gcd
from .primality import is_prime, odd_primes_below, primes_up_to

PARITIES = ("even", "odd")


def parity_bit(parity: str) -> int:
    """c mod 2 for a parity name."""
    try:
        return PARITIES.index(parity)
    except ValueError:
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}") from None


@dataclass(frozen=True)
class ResidueSets:
    p: int
    rq: tuple[int, ...]
    nrq: tuple[int, ...]


@dataclass(frozen=True)
class CongruenceFamily:
    modulus: int
    parity: str
    members: tuple[int, ...]
    T: int
    primes: tuple[int, ...]
    q1: int | None = None

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def residue_sets(p: int) -> ResidueSets:
    """Residues b mod p of the form -x^2 (rq) and the rest (nrq)."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"expected an odd prime, got {p}")
    rq = sorted({(-x * x) % p for x in range((p - 1) // 2 + 1)})
    in_rq = set(rq)
    nrq = [b for b in range(p) if b not in in_rq]
    return ResidueSets(p, tuple(rq), tuple(nrq))


class StepSolver:
    """Solve c = a (mod M), c = b (mod p) for fixed M = 2*p_F and next prime p.

    With (u, v) such that p*u - M*v = 1, the solution of p*x - M*y = a - b
    is y = v*(a - b) mod p, and c = M*y + a (mod M*p).
    """

    def __init__(self, M: int, p: int):
        g, s, t = ext_gcd(p, M)
        if g != 1:
            raise DomainError(f"{p} divides the modulus {M}")
        self.M, self.p = M, p
        self.v = (-t) % p  # p*s + M*t = 1, so v = -t

    def solve(self, a: int, b: int) -> int:
        y = self.v * (a - b) % self.p
        return self.M * y + a

    def batch(self, a: int, bs: Sequence[int]) -> list[int]:
        """Solve for every b in ``bs`` from the first solution and offsets.

        Only the first residue is solved directly; the others add
        M * (v*(b0 - bj) mod p), and those offsets depend on the b's alone.
        """
        if not bs:
            return []
        return self.batch_with_offsets(a, self.offsets(bs))

    def offsets(self, bs: Sequence[int]) -> tuple[int, list[int]]:
        b0 = bs[0]
        return b0, [self.M * (self.v * (b0 - bj) % self.p) for bj in bs]

    def batch_with_offsets(self, a: int, offs: tuple[int, list[int]]) -> list[int]:
        b0, table = offs
        c0 = self.solve(a, b0)
        Mp = self.M * self.p
        out = []
        for off in table:
            c = c0 + off
            out.append(c - Mp if c >= Mp else c)
        return out


def solve_step(a: ResidueClass, b: ResidueClass) -> ResidueClass:
    solver = StepSolver(a.modulus, b.modulus)
    return ResidueClass(solver.solve(a.value, b.value), a.modulus * b.modulus)


def batch_solve_step(a: ResidueClass, bs: Sequence[int], p: int) -> list[ResidueClass]:
    """Solutions of c = a (mod M), c = b (mod p) for every b in ``bs``.

    Equal, element for element, to ``solve_step`` applied to each b.
    """
    solver = StepSolver(a.modulus, p)
    return [ResidueClass(c, a.modulus * p) for c in solver.batch(a.value, list(bs))]


def _check_consecutive(F: Sequence[int]) -> tuple[int, ...]:
    F = tuple(F)
    expected = tuple(odd_primes_below(F[-1] + 1)) if F else ()
    if F != expected:
        raise DomainError(f"F must be the consecutive odd primes from 3, got {F}")
    return F


def _steps(F: Sequence[int], last_uses_rq: bool):
    """(StepSolver, residues, offsets) per prime of F; last step may use rq."""
    M = 2
    steps = []
    for i, p in enumerate(F):
        sets = residue_sets(p)
        bs = sets.rq if (last_uses_rq and i == len(F) - 1) else sets.nrq
        solver = StepSolver(M, p)
        steps.append((solver, bs, solver.offsets(bs)))
        M *= p
    return steps, M


def _materialize(F: Sequence[int], parity: str, last_uses_rq: bool) -> tuple[list[int], int]:
    steps, M = _steps(F, last_uses_rq)
    members = [parity_bit(parity)]
    for solver, _bs, offs in steps:
        members = [c for a in members for c in solver.batch_with_offsets(a, offs)]
    return sorted(members), M


def _stream(F: Sequence[int], parity: str, last_uses_rq: bool) -> Iterator[int]:
    """Depth-first enumeration in recursion order (a outer, b inner)."""
    steps, _ = _steps(F, last_uses_rq)
    depth = len(steps)

    def rec(a: int, m: int) -> Iterator[int]:
        if m == depth:
            yield a
            return
        solver, _bs, offs = steps[m]
        for c in solver.batch_with_offsets(a, offs):
            yield from rec(c, m + 1)

    yield from rec(parity_bit(parity), 0)


def cf_cardinal(F: Sequence[int]) -> int:
    return math.prod((p - 1) // 2 for p in F)


def ctilde_cardinal(q1: int) -> int:
    return (q1 + 1) // 2 * cf_cardinal(odd_primes_below(q1))


def build_CF(F: Sequence[int], parity: str) -> CongruenceFamily:
    """All c mod 2*p_F of the given parity with (-c/p) = -1 for each p in F."""
    F = _check_consecutive(F)
    members, M = _materialize(F, parity, last_uses_rq=False)
    return CongruenceFamily(M, parity, tuple(members), cf_cardinal(F), F)


def iter_CF(F: Sequence[int], parity: str) -> Iterator[int]:
    """Stream the members of build_CF(F, parity) without materializing them."""
    return _stream(_check_consecutive(F), parity, last_uses_rq=False)


def _ctilde_primes(q1: int) -> tuple[int, ...]:
    if q1 < 3 or q1 % 2 == 0 or not is_prime(q1):
        raise DomainError(f"q1 must be an odd prime, got {q1}")
    return tuple(odd_primes_below(q1)) + (q1,)


def build_Ctilde(q1: int, parity: str) -> CongruenceFamily:
    """All c mod q1# of the given parity whose E_c has smallest prime divisor q1."""
    F = _ctilde_primes(q1)
    members, M = _materialize(F, parity, last_uses_rq=True)
    return CongruenceFamily(M, parity, tuple(members), ctilde_cardinal(q1), F, q1)


def iter_Ctilde(q1: int, parity: str) -> Iterator[int]:
    return _stream(_ctilde_primes(q1), parity, last_uses_rq=True)


def primorial_modulus(q1: int) -> int:
    return math.prod(primes_up_to(q1))


def link_member(c: int, modulus: int) -> int:
    """The representative of c mod (modulus/2) with the opposite parity."""
    half = modulus // 2
    return c + half if c + half < modulus else c - half


def link_parities(family: CongruenceFamily) -> CongruenceFamily:
    """Switch a family to the opposite parity (equal modulo p_F)."""
    other = PARITIES[1 - parity_bit(family.parity)]
    members = sorted(link_member(c, family.modulus) for c in family.members)
    return CongruenceFamily(family.modulus, other, tuple(members), family.T,
                            family.primes, family.q1)


def transfer_first_index(j0: int, q1: int) -> int:
    """First-multiple index of q1 after switching the parity of c.

    N(X', c) = N(X'', c + q1) (mod q1) when j(X') + j(X'') = (q1-1)/2
    (mod q1); the map is an involution and sends minimal anchors to minimal
    anchors.
    """
    if not 0 <= j0 < q1:
        raise DomainError(f"j0 must lie in [0, {q1}), got {j0}")
    return ((q1 - 1) // 2 - j0) % q1
