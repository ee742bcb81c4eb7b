import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadprimes.arith import DomainError
from quadprimes.ecset import (
    EcParams,
    coprime_residue_forms,
    density_exact,
    eval_element,
    first_multiple,
    index_progressions,
    sieve_window,
    t_p,
)

from conftest import SMALL_ODD_PRIMES, brute_is_prime


def brute_first_multiple(A, c):
    ec = EcParams(c)
    for j in range(A):
        if eval_element(ec, j) % A == 0:
            return j
    return None


def test_eval_element_examples():
    assert eval_element(EcParams(1), 1) == 5
    assert eval_element(EcParams(157), 1) == 161
    assert eval_element(EcParams(4), 0) == 5


@given(st.integers(1, 10**40), st.integers(0, 10**6))
def test_elements_are_odd(c, j):
    assert eval_element(EcParams(c), j) % 2 == 1


def test_params_reject_nonpositive_c():
    with pytest.raises(DomainError):
        EcParams(0)


def test_t_p_examples():
    assert t_p(3, 1) == 0
    assert t_p(5, 1) == 2
    assert t_p(5, 10) == 1


@pytest.mark.parametrize("p", SMALL_ODD_PRIMES)
def test_t_p_counts_roots(p):
    for c in range(1, 3 * p):
        assert t_p(p, c) == sum(1 for x in range(p) if (x * x + c) % p == 0)


def test_first_multiple_examples():
    fm = first_multiple(5, EcParams(1))
    assert (fm.j0, fm.X0, fm.B0) == (1, 2, 1)
    fm = first_multiple(7, EcParams(157))
    assert (fm.j0, fm.X0, fm.B0) == (1, 2, 23)
    assert first_multiple(3, EcParams(1)) is None


@pytest.mark.parametrize("A", SMALL_ODD_PRIMES + [9, 15, 21, 25, 27, 35, 45])
def test_first_multiple_is_minimal(A):
    for c in range(1, 200):
        fm = first_multiple(A, EcParams(c))
        j = brute_first_multiple(A, c)
        if j is None:
            assert fm is None
        else:
            assert fm.j0 == j
            assert fm.X0 == 2 * j + EcParams(c).r
            assert fm.B0 * A == fm.X0**2 + c


def test_first_multiple_rejects_even_modulus():
    with pytest.raises(DomainError):
        first_multiple(4, EcParams(1))


def test_index_progressions_examples():
    pr = index_progressions(5, EcParams(1))
    assert {pr.start1, pr.start2} == {1, 4} and pr.step == 5 and not pr.merged
    pr = index_progressions(7, EcParams(157))
    assert {pr.start1, pr.start2} == {1, 6}
    pr = index_progressions(5, EcParams(25))
    assert pr.merged and pr.start1 == pr.start2
    assert index_progressions(3, EcParams(1)) is None


@pytest.mark.parametrize("p", SMALL_ODD_PRIMES)
def test_sieve_two_completeness(p):
    for c in range(1, 501):
        ec = EcParams(c)
        pr = index_progressions(p, ec)
        hits = {j for j in range(10 * p + 1) if eval_element(ec, j) % p == 0}
        if pr is None:
            assert not hits
            continue
        assert hits == {j for j in range(10 * p + 1) if pr.contains(j)}
        assert pr.merged == (pr.start1 == pr.start2) == (c % p == 0)


@pytest.mark.parametrize("c", [1, 2, 3, 4, 6, 157, 1000])
def test_sieve_window_matches_trial_division(c):
    ec = EcParams(c)
    primes = SMALL_ODD_PRIMES
    for lo, hi in [(0, 300), (17, 211)]:
        alive = sieve_window(ec, lo, hi, primes)
        for k, j in enumerate(range(lo, hi)):
            v = eval_element(ec, j)
            expected = all(v % p or v == p for p in primes)
            assert alive[k] == expected
            if 1 < v < 97 * 97:
                assert alive[k] == brute_is_prime(v)


def test_coprime_residue_examples():
    got = coprime_residue_forms(EcParams(1), [5])
    assert [b for b, _ in got] == [0, 4, 6]
    assert len(coprime_residue_forms(EcParams(1), [5, 13])) == 33
    assert [b for b, _ in coprime_residue_forms(EcParams(6), [])] == [1]


def test_coprime_residue_rejects_non_divisor():
    with pytest.raises(DomainError):
        coprime_residue_forms(EcParams(1), [3])


def _divisor_subsets(c):
    usable = [p for p in (3, 5, 7, 11, 13) if t_p(p, c) >= 1]
    for k in range(len(usable) + 1):
        yield from itertools.combinations(usable, k)


@pytest.mark.parametrize("c", [1, 2, 5, 7, 10, 14, 21, 30, 157])
def test_partition_property(c):
    ec = EcParams(c)
    for F in _divisor_subsets(c):
        pF = math.prod(F)
        forms = coprime_residue_forms(ec, F)
        bs = [b for b, _ in forms]
        assert len(set(bs)) == len(bs) == math.prod(p - t_p(p, c) for p in F)
        assert all(0 <= b < 2 * pF and b % 2 == ec.r for b in bs)
        for b, q in forms:
            assert (q.a2, q.a1, q.a0) == (4 * pF * pF, 4 * b * pF, b * b + c)
            assert q.discriminant == -16 * pF * pF * c
            assert q(3) == (2 * pF * 3 + b) ** 2 + c
        classes = set(bs)
        for X in range(ec.r, 2 * pF * 5 + 1, 2):
            coprime = math.gcd(X * X + c, pF) == 1
            assert coprime == (X % (2 * pF) in classes)


def test_density_examples():
    assert density_exact(EcParams(1), [5]) == Fraction(3, 5)
    assert density_exact(EcParams(1), [3]) == 1
    assert density_exact(EcParams(1), []) == 1


@given(st.integers(1, 10**6), st.lists(st.sampled_from([3, 5, 7, 11, 13]), unique=True))
def test_density_is_survivor_ratio(c, F):
    ec = EcParams(c)
    pF = math.prod(F)
    period = [j for j in range(pF) if math.gcd(eval_element(ec, j), pF) == 1]
    assert density_exact(ec, F) == Fraction(len(period), pF)

