"""Density estimators and experiment statistics for primes in E_c.

Two density conventions appear side by side and are never mixed silently:

* per unit X:   d_per_X = count / X_max        (h_emp = s(c) * d_per_X)
* per element:  d_per_element = count / #{X <= X_max of parity r}

With h the product constant, the expected number of primes for X in
[0, 4 m_c / z] is 4 h / (z ln 10).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .arith import DomainError, legendre
from .ecset import EcParams, eval_element, sieve_window
from .generator import CandidatePair
from .parallel import parallel_map, split_range
from .primality import DEFAULT_POLICY, PrimalityPolicy, is_prime, odd_primes_below, prime_array

# Sieving bound used to discard obvious composites before primality tests.
SIEVE_PRIMES = 2000
# indices sieved at a time while hunting
HUNT_BLOCK = 64
LN10 = math.log(10)


def hc_product(c: int, prime_limit: int) -> float:
    """Truncated product over odd primes p <= prime_limit of (p - t_p)/(p - 1).

    Primes dividing c contribute a factor 1 and are skipped; the factors are
    multiplied in increasing p.
    """
    if prime_limit < 3:
        raise DomainError("prime_limit must be >= 3")
    h = 1.0
    for p in prime_array(prime_limit)[1:].tolist():
        cp = c % p
        if cp == 0:
            continue
        # (p - t_p)/(p - 1) = (p - 1 - (-c/p))/(p - 1)
        h *= (p - 1 - legendre(-cp, p)) / (p - 1)
    return h


def hc_product_checkpoints(c: int, limits: Sequence[int]) -> list[tuple[int, float]]:
    """hc_product at several limits in one pass."""
    limits = sorted(limits)
    out = []
    h = 1.0
    primes = prime_array(limits[-1])[1:].tolist()
    i = 0
    for lim in limits:
        while i < len(primes) and primes[i] <= lim:
            p = primes[i]
            cp = c % p
            if cp:
                h *= (p - 1 - legendre(-cp, p)) / (p - 1)
            i += 1
        out.append((lim, h))
    return out


# -- counting primes in E_c ---------------------------------------------------

def _prime_indices(args) -> list[int]:
    """Indices j in [j_lo, j_hi) whose element of E_c is prime."""
    c, j_lo, j_hi, policy = args
    ec = EcParams(c)
    alive = sieve_window(ec, j_lo, j_hi, _sieve_primes())
    return [j_lo + int(k) for k in np.flatnonzero(alive)
            if is_prime(eval_element(ec, j_lo + int(k)), policy)]


_SIEVE_CACHE: list[int] = []


def _sieve_primes() -> list[int]:
    if not _SIEVE_CACHE:
        _SIEVE_CACHE.extend(odd_primes_below(SIEVE_PRIMES))
    return _SIEVE_CACHE


def prime_indices(ec: EcParams, j_lo: int, j_hi: int,
                  policy: PrimalityPolicy = DEFAULT_POLICY, workers: int = 1) -> list[int]:
    """All j in [j_lo, j_hi) with (2j + r)^2 + c prime, ascending."""
    chunks = split_range(j_lo, j_hi, max(1, workers) * 4)
    parts = parallel_map(_prime_indices, [(ec.c, a, b, policy) for a, b in chunks], workers)
    return [j for part in parts for j in part]


def j_bound(ec: EcParams, X_max: int) -> int:
    """Number of indices j >= 0 with 2j + r <= X_max."""
    if X_max < ec.r:
        return 0
    return (X_max - ec.r) // 2 + 1


@dataclass
class DensityReport:
    c: int
    X_max: int
    prime_count: int
    d_per_X: float
    d_per_element: float
    h_emp: float
    checkpoints: list[tuple[int, int]] = field(default_factory=list)

    def checkpoint_rows(self, s_c: float) -> list[dict]:
        """Per-checkpoint values in both density conventions."""
        ec = EcParams(self.c)
        rows = []
        for X, n in self.checkpoints:
            elements = j_bound(ec, X)
            d_x = n / X if X else 0.0
            rows.append({"X": X, "count": n, "d_per_X": d_x,
                         "d_per_element": n / elements if elements else 0.0,
                         "h_emp": s_c * d_x})
        return rows


def count_primes_ec(c: int, X_max: int, checkpoint_step: int = 0,
                    policy: PrimalityPolicy = DEFAULT_POLICY, workers: int = 1) -> DensityReport:
    """Count primes X^2 + c with X of parity r, 0 <= X <= X_max."""
    if X_max < 0:
        raise DomainError("X_max must be >= 0")
    ec = EcParams(c)
    js = prime_indices(ec, 0, j_bound(ec, X_max), policy, workers)
    xs = [2 * j + ec.r for j in js]
    checkpoints = []
    if checkpoint_step > 0:
        k = 0
        for X in range(checkpoint_step, X_max + 1, checkpoint_step):
            while k < len(xs) and xs[k] <= X:
                k += 1
            checkpoints.append((X, k))
    count = len(xs)
    elements = j_bound(ec, X_max)
    d_x = count / X_max if X_max else 0.0
    return DensityReport(c, X_max, count, d_x, count / elements if elements else 0.0,
                         ec.s * d_x, checkpoints)


# -- N_z statistics -----------------------------------------------------------

def iz_bound(m_c: int, z: float) -> int:
    """Upper end of I_z = [0, 4 m_c / z] (floored)."""
    if z < 1:
        raise DomainError("z must be >= 1")
    return math.floor(4 * m_c / z)


@dataclass
class NzStats:
    z: float
    bound: int
    counts: list[int]
    distribution: dict[int, float]
    expected: float
    h: float

    @property
    def mean(self) -> float:
        return sum(self.counts) / len(self.counts) if self.counts else 0.0

    @property
    def mode(self) -> int:
        """Most frequent count (smallest one on ties)."""
        top = max(self.distribution.values())
        return min(k for k, v in self.distribution.items() if v == top)

    @property
    def fraction_with_prime(self) -> float:
        return sum(1 for n in self.counts if n >= 1) / len(self.counts) if self.counts else 0.0


def _common_m(pairs: Sequence[CandidatePair]) -> int:
    ms = {EcParams(p.c).m for p in pairs}
    if len(ms) != 1:
        raise DomainError(f"pairs must share one decimal size, got {sorted(ms)}")
    return ms.pop()


def nz_stats(pairs: Sequence[CandidatePair], z: float, policy: PrimalityPolicy = DEFAULT_POLICY,
             h: Optional[float] = None, h_limit: int = 10**5, workers: int = 1) -> NzStats:
    """N_z per pair over X in I_z, its distribution, and the expected 4h/(z ln 10).

    When ``h`` is not supplied it is the mean of hc_product(c, h_limit) over
    the cohort.
    """
    if not pairs:
        raise DomainError("empty cohort")
    m = _common_m(pairs)
    bound = iz_bound(m, z)
    tasks = [(p.c, 0, j_bound(EcParams(p.c), bound), policy) for p in pairs]
    counts = [len(js) for js in parallel_map(_prime_indices, tasks, workers)]
    if h is None:
        h = sum(hc_product(p.c, h_limit) for p in pairs) / len(pairs)
    hist = Counter(counts)
    dist = {k: 100.0 * v / len(counts) for k, v in sorted(hist.items())}
    return NzStats(z, bound, counts, dist, 4 * h / (z * LN10), h)


def bucket_edges(width: int, n_buckets: int, first_width: Optional[int] = None) -> list[tuple[int, int]]:
    """Inclusive j-ranges of consecutive buckets.

    ``first_width`` lets the first bucket differ, e.g. width 60 with a first
    bucket [0, 60] of 61 indices.
    """
    if width < 1:
        raise DomainError("bucket width must be >= 1")
    edges = []
    lo = 0
    for i in range(n_buckets):
        w = first_width if (i == 0 and first_width) else width
        edges.append((lo, lo + w - 1))
        lo += w
    return edges


def interval_histogram(pair: CandidatePair, bucket_width_j: int, n_buckets: int,
                       policy: PrimalityPolicy = DEFAULT_POLICY,
                       first_width: Optional[int] = None) -> list[int]:
    """Prime counts of eval_element(j) over consecutive j-buckets."""
    edges = bucket_edges(bucket_width_j, n_buckets, first_width)
    if not edges:
        return []
    ec = EcParams(pair.c)
    js = prime_indices(ec, 0, edges[-1][1] + 1, policy)
    return [sum(1 for j in js if lo <= j <= hi) for lo, hi in edges]


# -- hunting -------------------------------------------------------------------

def hunt_primes(pair: CandidatePair, z: float, max_results: int,
                policy: PrimalityPolicy = DEFAULT_POLICY,
                start_X: int = 0, end_X: Optional[int] = None) -> list[tuple[int, int]]:
    """Primes X^2 + c for X in I_z of parity r, ascending in X.

    ``start_X``/``end_X`` restrict the scan to a sub-range of I_z.  Each hit
    is re-tested under a reseeded policy; a disagreement raises
    :class:`VerificationError`.
    """
    if max_results <= 0:
        return []
    ec = EcParams(pair.c)
    bound = iz_bound(ec.m, z)
    if end_X is not None:
        bound = min(bound, end_X)
    found = []
    j = j_bound(ec, start_X - 1) if start_X > 0 else 0
    j_end = j_bound(ec, bound)
    # sieve and test block by block so the scan stops at max_results
    while j < j_end and len(found) < max_results:
        hi = min(j_end, j + HUNT_BLOCK)
        alive = sieve_window(ec, j, hi, _sieve_primes())
        for k in np.flatnonzero(alive).tolist():
            v = eval_element(ec, j + k)
            if not is_prime(v, policy):
                continue
            if not is_prime(v, policy.reseeded()):
                raise VerificationError(f"re-check failed for X={2 * (j + k) + ec.r}")
            found.append((2 * (j + k) + ec.r, v))
            if len(found) >= max_results:
                break
        j = hi
    return found


class VerificationError(RuntimeError):
    """A prime found under one policy seed failed the re-check."""


# -- regression and yield ---------------------------------------------------------

def _loglog_fit(lx: np.ndarray, ly: np.ndarray) -> tuple[float, float, float]:
    sxx = float(np.sum((lx - lx.mean()) ** 2))
    if sxx == 0.0:
        raise DomainError("all x are equal")
    b = float(np.sum((lx - lx.mean()) * (ly - ly.mean())) / sxx)
    ln_a = float(ly.mean() - b * lx.mean())
    syy = float(np.sum((ly - ly.mean()) ** 2))
    R = 1.0 if syy == 0.0 else b * math.sqrt(sxx / syy)
    return math.exp(ln_a), b, R


def power_law_fit(points: Sequence[tuple[float, float]], method: str = "nonlinear",
                  max_iter: int = 100) -> tuple[float, float, float]:
    """Fit y = a x^b and return (a, b, R).

    ``method='loglog'`` is least squares on ln y = ln a + b ln x, with R the
    correlation of the linearized data.  ``method='nonlinear'`` (default)
    minimizes the squared residuals in y itself by Gauss-Newton started from
    the log-log solution; R is then sqrt(1 - SS_res/SS_tot) in y.  The two
    differ noticeably when the data span several decades, because the
    nonlinear fit is dominated by the largest y.
    """
    if len(points) < 3:
        raise DomainError("need at least 3 points")
    arr = np.asarray(points, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("points must be positive")
    x, y = arr[:, 0], arr[:, 1]
    lx = np.log(x)
    a, b, R = _loglog_fit(lx, np.log(y))
    if method == "loglog":
        return a, b, R
    if method != "nonlinear":
        raise DomainError(f"unknown fit method {method!r}")
    for _ in range(max_iter):
        xb = np.exp(b * lx)
        jac = np.column_stack([xb, a * xb * lx])
        (da, db), *_ = np.linalg.lstsq(jac, y - a * xb, rcond=None)
        a, b = a + float(da), b + float(db)
        if abs(da) <= 1e-14 * abs(a) and abs(db) <= 1e-14 * max(1.0, abs(b)):
            break
    resid = y - a * np.exp(b * lx)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum(resid**2))
    R = 1.0 if ss_tot == 0.0 else math.sqrt(max(0.0, 1.0 - ss_res / ss_tot))
    return a, b, R


@dataclass(frozen=True)
class YieldEstimate:
    congruences_log10: float
    lower_log10: float
    upper_log10: float

    @property
    def lower(self) -> float:
        return 10.0 ** self.lower_log10

    @property
    def congruences(self) -> float:
        return 10.0 ** self.congruences_log10


def expected_prime_yield(q1: int, m_c: int, h: float) -> YieldEstimate:
    """Bounds on the number of primes over all classes of c mod q1#, in log10.

    congruences = (q1+1)/2 * prod over odd p < q1 of (p-1)/2
    lower = h / (m_c ln 10) * congruences,  upper = lower * 10^(m_c/2)
    """
    cong = math.log10((q1 + 1) / 2) + sum(math.log10((p - 1) / 2) for p in odd_primes_below(q1))
    lower = math.log10(h / (m_c * LN10)) + cong
    return YieldEstimate(cong, lower, lower + m_c / 2)
