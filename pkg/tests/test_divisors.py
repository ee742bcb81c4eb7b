import math

import pytest
from hypothesis import given, strategies as st

from quadprimes.arith import DomainError
from quadprimes.divisors import (
    SubProgression,
    cofactor_progression,
    count_cofactor_primes,
    count_cofactor_primes_window,
    definition_step_disagreements,
    divisor_subprogressions,
    first_divisible_index,
    is_irreducible,
    literal_conditions,
)
from quadprimes.ecset import EcParams, first_multiple, t_p
from quadprimes.primality import primes_up_to

from conftest import SMALL_ODD_PRIMES, brute_is_prime


def cp_of(A1, c, eps):
    return cofactor_progression(A1, EcParams(c), eps)


def test_values_examples():
    assert [cp_of(5, 1, 1).value(n) for n in range(3)] == [1, 29, 97]
    assert [cp_of(5, 1, -1).value(n) for n in range(3)] == [1, 13, 65]
    assert [cp_of(5, 1, -1).x_of(n) for n in range(3)] == [2, 8, 18]
    assert cp_of(7, 157, 1).value(0) == 23
    assert cp_of(5, 1, 1).coefficients == (20, 8, 1)


def test_progression_rejects_non_divisor():
    with pytest.raises(DomainError):
        cp_of(3, 1, 1)
    with pytest.raises(DomainError):
        cp_of(5, 1, 0)


@given(st.sampled_from([5, 7, 9, 13, 15, 25, 29]), st.integers(1, 2000),
       st.sampled_from([1, -1]), st.integers(0, 10**4))
def test_values_recover_elements(A1, c, eps, n):
    ec = EcParams(c)
    if first_multiple(A1, ec) is None:
        return
    cp = cofactor_progression(A1, ec, eps)
    v = cp.value(n)
    X = cp.x_of(n)
    assert v >= 1 and v % 2 == 1
    assert A1 * v == X * X + c
    assert X % 2 == ec.r


def test_value_zero_is_one_for_members():
    # A1 itself an element of E_c gives B0 = 1
    for c in range(1, 60):
        ec = EcParams(c)
        for X in range(ec.r, 12, 2):
            A1 = X * X + c
            if A1 >= 3:
                fm = first_multiple(A1, ec)
                if fm.X0 == X:
                    assert cofactor_progression(A1, ec, 1).value(0) == 1


def test_irreducibility_examples():
    assert is_irreducible(cp_of(5, 1, 1))
    cp = cp_of(9, 9, 1)
    assert (cp.X0, cp.B0) == (0, 1) and is_irreducible(cp)
    # c = 9 * 2 with A1 = 9: X0 = 3, B0 = 3, so 3 divides all of A1, X0, B0
    cp = cp_of(9, 18, 1)
    assert (cp.X0, cp.B0) == (3, 3) and not is_irreducible(cp)


@given(st.sampled_from([9, 15, 21, 25, 27, 45, 49]), st.integers(1, 3000))
def test_irreducible_iff_gcd_one(A1, c):
    ec = EcParams(c)
    if first_multiple(A1, ec) is None:
        return
    cp = cofactor_progression(A1, ec, 1)
    g = math.gcd(A1, cp.X0, cp.B0)
    assert is_irreducible(cp) == (g == 1)
    if g > 1:
        assert all(cp.value(n) % g == 0 for n in range(20))


def brute_multiples(cp, A, limit):
    return {n for n in range(limit + 1) if cp.value(n) % A == 0}


def test_subprogression_example_a13():
    cp = cp_of(5, 1, 1)
    subs = divisor_subprogressions(cp, 13)
    duals = [s for s in subs if s.a == 13]
    assert len(duals) == 1 and duals[0].step == 13
    n0 = first_divisible_index(cp, 13)
    assert cp.value(n0) % 13 == 0 and duals[0].n0 == n0
    got = set().union(*(set(s.terms(200)) for s in subs))
    assert got == brute_multiples(cp, 13, 200)


def test_no_multiple_gives_empty():
    # 3 never divides X^2 + 1, hence never a cofactor value
    assert divisor_subprogressions(cp_of(5, 1, 1), 3) == []
    with pytest.raises(DomainError):
        divisor_subprogressions(cp_of(5, 1, 1), 1)


COVERAGE_CASES = [(A1, c) for A1 in (3, 5, 7, 9, 11, 13, 15) for c in range(1, 61)
                  if first_multiple(A1, EcParams(c)) is not None]


@pytest.mark.parametrize("A1,c", COVERAGE_CASES)
def test_membership_and_coverage(A1, c):
    for eps in (1, -1):
        cp = cp_of(A1, c, eps)
        for A in range(2, 61):
            subs = divisor_subprogressions(cp, A)
            for s in subs:
                assert isinstance(s, SubProgression)
                assert all(cp.value(s.n0 + k * s.step) % A == 0 for k in range(51))
            covered = set().union(*(set(s.terms(500)) for s in subs)) if subs else set()
            assert covered == brute_multiples(cp, A, 500)
            if subs:
                dual = [s for s in subs if s.a == A]
                assert len(dual) == 1 and dual[0].step == A


def test_literal_condition_diagnostic_disagrees_somewhere():
    # the variant without the factor u must disagree with the emitted
    # progressions somewhere
    disagreements = 0
    for A1, c in COVERAGE_CASES[:120]:
        for eps in (1, -1):
            cp = cp_of(A1, c, eps)
            for A in range(2, 41):
                n0 = first_divisible_index(cp, A)
                if n0 is None:
                    continue
                emitted = {s.a for s in divisor_subprogressions(cp, A)}
                for a in range(1, A + 1):
                    if A % a == 0:
                        disagreements += literal_conditions(cp, A, a, n0) != (a in emitted)
    assert disagreements > 0


def test_definition_step_reported():
    found = [(A1, c, A) for A1, c in COVERAGE_CASES[:150] for A in range(2, 41)
             if definition_step_disagreements(cp_of(A1, c, 1), A)]
    assert found
    for A1, c, A in found[:5]:
        cp = cp_of(A1, c, 1)
        for a in definition_step_disagreements(cp, A):
            assert math.gcd(a * A1, A // a) != math.gcd(a, A // a)


@pytest.mark.parametrize("A1,c", [(5, 1), (7, 157), (9, 9), (13, 17), (15, 11)])
def test_prime_divisors_of_cofactors_divide_elements(A1, c):
    for eps in (1, -1):
        cp = cp_of(A1, c, eps)
        for n in range(201):
            v = cp.value(n)
            for p in primes_up_to(300)[1:]:
                if v % p == 0:
                    assert t_p(p, c) >= 1


@pytest.mark.parametrize("p,nu,d", [(3, 2, 1), (3, 2, 7), (5, 2, 3), (3, 4, 1), (5, 1, 1), (3, 3, 5), (7, 1, 3)])
def test_prime_power_case(p, nu, d):
    # odd c = p^nu * d with p not dividing d, and A1 = p^nu
    c = p**nu * d
    assert c % 2 == 1 and d % p
    A1 = p**nu
    plus, minus = cp_of(A1, c, 1), cp_of(A1, c, -1)
    assert [plus.value(n) for n in range(101)] == [minus.value(n) for n in range(101)]
    if any(plus.value(n) % p == 0 for n in range(101)):
        assert nu % 2 == 0


def test_prime_power_parity_condition_for_even_c():
    # with even c the two progressions differ, but the parity of nu still
    # decides whether p can divide a cofactor
    for p, nu, d in [(3, 2, 2), (3, 3, 2), (5, 2, 2), (3, 4, 2)]:
        c = p**nu * d
        cp = cp_of(p**nu, c, 1)
        if any(cp.value(n) % p == 0 for n in range(200)):
            assert nu % 2 == 0


@pytest.mark.parametrize("A1,c", [(5, 1), (7, 157), (13, 17), (9, 9), (25, 1)])
def test_residue_count_matches_t_p(A1, c):
    for eps in (1, -1):
        cp = cp_of(A1, c, eps)
        for p in SMALL_ODD_PRIMES:
            if A1 % p == 0 or t_p(p, c) == 0:
                continue
            roots = sum(1 for n in range(p) if cp.value(n) % p == 0)
            assert roots == t_p(p, c)


def test_count_examples():
    cp = cp_of(5, 1, 1)
    assert count_cofactor_primes(cp, 0) == 0
    assert count_cofactor_primes(cp, 2000) == 482
    assert count_cofactor_primes(cp, 200) == sum(brute_is_prime(cp.value(n)) for n in range(201))
    with pytest.raises(DomainError):
        count_cofactor_primes(cp, -1)


@pytest.mark.parametrize("x", [5, 10, 77, 250, 1000])
def test_window_count_by_element_bound(x):
    for eps in (1, -1):
        cp = cp_of(5, 1, eps)
        expected = sum(1 for n in range(x) if cp.x_of(n) < 2 * x + 1 and brute_is_prime(cp.value(n)))
        assert count_cofactor_primes_window(cp, x) == expected


def test_counts_independent_of_workers():
    cp = cp_of(5, 1, 1)
    assert count_cofactor_primes(cp, 3000, workers=1) == count_cofactor_primes(cp, 3000, workers=2)
