"""Generate c whose E_c has a prescribed smallest prime divisor q1.

``algorithm1`` enumerates the classes of c mod q1# exhaustively (even
parity solved directly, odd parity obtained by the parity link).
``algorithm2`` follows a single congruence chain, picking one quadratic
nonresidue per prime from a seed X, and only branches at q1 itself.
"""

from __future__ import annotations

import itertools
import logging
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional

from .arith import DomainError, ResidueClass, crt_tree, digit_count, legendre
from .congruence import (
    StepSolver,
    build_Ctilde,
    ctilde_cardinal,
    iter_Ctilde,
    link_member,
    parity_bit,
    primorial_modulus,
    residue_sets,
    transfer_first_index,
)
from .ecset import EcParams, eval_element, first_multiple
from .parallel import parallel_map
from .primality import is_prime, odd_primes_below

log = logging.getLogger(__name__)

# Above this many classes algorithm1 streams in recursion order instead of
# materializing and sorting the whole family.
MATERIALIZE_LIMIT = 1 << 20


class TruncationWarning(UserWarning):
    """Fewer pairs exist than were requested."""


@dataclass(frozen=True)
class CandidatePair:
    c: int
    j0: int
    q1: int
    modulus: int

    @property
    def parity(self) -> str:
        return "odd" if self.c & 1 else "even"

    @property
    def q1_divides_c(self) -> bool:
        return self.c % self.q1 == 0

    @property
    def ec(self) -> EcParams:
        return EcParams(self.c)


@dataclass(frozen=True)
class Seed:
    X: int

    def __post_init__(self):
        if self.X < 1:
            raise DomainError(f"seed X must be >= 1, got {self.X}")


def _check_q1(q1: int) -> None:
    if q1 < 3 or q1 % 2 == 0 or not is_prime(q1):
        raise DomainError(f"q1 must be an odd prime, got {q1}")


def anchor_index(c: int, q1: int) -> int:
    """j_{q1,c}(0): the first index j with q1 | (2j + r)^2 + c."""
    fm = first_multiple(q1, EcParams(c))
    if fm is None:
        raise DomainError(f"{q1} divides no element of E_{c}")
    return fm.j0


def validate_pair(pair: CandidatePair) -> list[str]:
    """Independent check by scanning; returns a list of problems (empty if valid).

    No Legendre symbols or square roots: for every odd prime p < q1 all X
    in [0, p) are tried, and the anchor is found by scanning j.
    """
    problems = []
    c, q1 = pair.c, pair.q1
    if c < 1:
        return [f"c={c} is not positive"]
    if pair.modulus != primorial_modulus(q1):
        problems.append(f"modulus {pair.modulus} is not {q1}#")
    for p in odd_primes_below(q1):
        cp = c % p
        if any((x * x + cp) % p == 0 for x in range(p)):
            problems.append(f"{p} < q1 divides an element of E_{c}")
            break
    ec = EcParams(c)
    first = next((j for j in range(q1) if eval_element(ec, j) % q1 == 0), None)
    if first is None:
        problems.append(f"q1={q1} divides no element of E_c")
    elif first != pair.j0:
        problems.append(f"j0={pair.j0} but first multiple of q1 is at j={first}")
    return problems


def _pairs_from_even(evens: Iterable[int], q1: int, M: int, parity: str) -> list[CandidatePair]:
    """Pairs for the even classes, optionally moved to odd parity by the link."""
    anchors: dict[int, int] = {}
    out = []
    for c in evens:
        c = c or M  # class 0 stands for c = q1#
        # the anchor depends on c mod q1 only
        key = c % q1
        if key not in anchors:
            anchors[key] = anchor_index(c, q1)
        j0 = anchors[key]
        if parity == "even":
            out.append(CandidatePair(c, j0, q1, M))
        else:
            # the odd link partner is congruent to c mod q1 (q1 divides M/2)
            out.append(CandidatePair(link_member(c, M), transfer_first_index(j0, q1), q1, M))
    return out


def algorithm1(q1: int, count: int, parity: str = "odd") -> list[CandidatePair]:
    """The first ``count`` pairs (c, j0) with min prime divisor of E_c = q1.

    Even classes come from the congruence recursion; odd ones from the
    parity link and index transfer, without re-solving.  Output is ascending
    in c within each parity while the family is small enough to materialize
    (at most MATERIALIZE_LIMIT classes); beyond that, classes are streamed
    in recursion order.  ``parity='both'`` returns the even pairs then the
    odd ones, ``count`` of each.
    """
    _check_q1(q1)
    if count < 1:
        raise DomainError("count must be >= 1")
    if parity == "both":
        return algorithm1(q1, count, "even") + algorithm1(q1, count, "odd")
    parity_bit(parity)
    total = ctilde_cardinal(q1)
    if count > total:
        warnings.warn(f"q1={q1} has only {total} classes per parity; returning all of them",
                      TruncationWarning, stacklevel=2)
        count = total
    M = primorial_modulus(q1)
    if total <= MATERIALIZE_LIMIT:
        evens = build_Ctilde(q1, "even").members
        pairs = _pairs_from_even(evens, q1, M, parity)
        pairs.sort(key=lambda pr: pr.c)
        return pairs[:count]
    evens = itertools.islice(iter_Ctilde(q1, "even"), count)
    return _pairs_from_even(evens, q1, M, parity)


def choose_nonresidue(p: int) -> int:
    """A quadratic nonresidue n mod p (returned in [0, p)).

    p = 3 (mod 4): -1.  p = 5 (mod 8): 2.  Otherwise the first prime
    3 <= n < p with (n/p) = -1.
    """
    if p % 4 == 3:
        return p - 1
    if p % 8 == 5:
        return 2
    n = 3
    while legendre(n, p) != -1:
        n += 2
        while not is_prime(n):
            n += 2
    return n


def _chain_residue(args: tuple[int, int]) -> ResidueClass:
    p, X = args
    x = X % p or 1  # a seed divisible by p would give c = 0 (mod p)
    n = choose_nonresidue(p)
    return ResidueClass(-4 * x * x * n, p)


def chain_class(q1: int, seed: Seed, parity: str = "odd", workers: int = 1) -> ResidueClass:
    """The single class c mod 2*p_F (F = odd primes < q1) picked by the seed.

    For each p, c = -4 X^2 n_p (mod p) so that -c = (2X)^2 n_p is a
    nonresidue.  Per-prime residues are independent and the merge is an
    exact product-tree CRT, so the worker count does not affect the result.
    """
    primes = odd_primes_below(q1)
    leaves = parallel_map(_chain_residue, [(p, seed.X) for p in primes], workers)
    return crt_tree([ResidueClass(parity_bit(parity), 2)] + leaves)


def _rq_order(q1: int) -> list[int]:
    # nonzero residues ascending, the q1 | c class last
    rq = residue_sets(q1).rq
    return [b for b in rq if b] + [0]


def algorithm2(q1: int, count: int, seed: Seed | int = 1, parity: str = "odd",
               workers: int = 1) -> list[CandidatePair]:
    """Up to (q1+1)/2 pairs from one congruence chain chosen by ``seed``."""
    _check_q1(q1)
    if isinstance(seed, int):
        seed = Seed(seed)
    if not 1 <= count <= (q1 + 1) // 2:
        raise DomainError(f"count must lie in [1, {(q1 + 1) // 2}] for q1={q1}")
    base = chain_class(q1, seed, parity, workers)
    bs = _rq_order(q1)[:count]
    solver = StepSolver(base.modulus, q1)
    cs = solver.batch(base.value, bs)
    M = base.modulus * q1
    anchors = {}
    out = []
    for c in cs:
        key = c % q1
        if key not in anchors:
            anchors[key] = anchor_index(c, q1)
        out.append(CandidatePair(c, anchors[key], q1, M))
    flagged = sum(pr.q1_divides_c for pr in out)
    if flagged:
        log.info("algorithm2 q1=%d: %d pair(s) with q1 | c", q1, flagged)
    return out


def lift_to_digits(pair: CandidatePair, target_m: int, offset: int = 0) -> CandidatePair:
    """Move c within its class mod q1# to exactly ``target_m`` decimal digits.

    Picks the smallest n >= 0 with c + n*q1# of that size, plus ``offset``
    further steps.  j0 and q1 are unchanged.
    """
    if offset < 0:
        raise DomainError("offset must be >= 0")
    lo = 10 ** (target_m - 1)
    n = max(0, -(-(lo - pair.c) // pair.modulus)) + offset
    c = pair.c + n * pair.modulus
    if digit_count(c) != target_m:
        raise DomainError(f"no member of c mod {pair.modulus} (plus offset {offset}) "
                          f"has {target_m} digits")
    return CandidatePair(c, pair.j0, pair.q1, pair.modulus)
