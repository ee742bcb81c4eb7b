import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quadprimes.primality import (
    DETERMINISTIC_LIMIT,
    PrimalityPolicy,
    _strong_lucas,
    is_prime,
    next_prime,
    odd_primes_below,
    prime_array,
    primes_up_to,
)

from conftest import brute_is_prime


def test_sieve_counts():
    assert len(primes_up_to(10**4)) == 1229
    assert len(prime_array(4 * 10**6)) == 283146
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]
    assert odd_primes_below(13) == [3, 5, 7, 11]


def test_is_prime_agrees_with_sieve_below_a_million():
    limit = 10**6
    sieve = np.zeros(limit + 1, dtype=bool)
    sieve[prime_array(limit)] = True
    mismatches = [n for n in range(limit + 1) if is_prime(n) != sieve[n]]
    assert mismatches == []


@given(st.integers(0, 10**5))
def test_is_prime_trial_division(n):
    assert is_prime(n) == brute_is_prime(n)


# strong pseudoprimes to several bases, Carmichael numbers, and products
# of two large primes
HARD_COMPOSITES = [
    2047, 3215031751, 3825123056546413051, 318665857834031151167461,
    3317044064679887385961981, 561, 41041, 825265, 321197185,
    (2**61 - 1) * (2**31 - 1), (10**50 + 151) * (10**40 + 121),
]


@pytest.mark.parametrize("n", HARD_COMPOSITES)
def test_hard_composites(n):
    assert not is_prime(n)


@pytest.mark.parametrize("n", [2**61 - 1, 2**89 - 1, 2**127 - 1, 10**100 + 267, 2**521 - 1])
def test_known_primes(n):
    assert is_prime(n)


@settings(max_examples=60, deadline=None)
@given(st.integers(DETERMINISTIC_LIMIT, 10**60))
def test_agrees_with_sympy_above_deterministic_range(n):
    assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("n", [5459, 5777, 10877, 16109, 18971, 22499])
def test_strong_lucas_pseudoprimes(n):
    # the first strong Lucas pseudoprimes (Selfridge parameters) fool the
    # Lucas stage alone but not the combined test
    assert _strong_lucas(n)
    assert not is_prime(n)


def test_strong_lucas_on_primes():
    for p in primes_up_to(5000)[3:]:
        if int(p ** 0.5) ** 2 != p:
            assert _strong_lucas(p)


def test_policy_determinism_and_seeds():
    n = next_prime(10**80)
    for seed in range(5):
        pol = PrimalityPolicy(rng_seed=seed)
        assert is_prime(n, pol)
        assert not is_prime(n * next_prime(10**20), pol)
    assert PrimalityPolicy(rng_seed=3).reseeded(2).rng_seed == 5


def test_policy_without_lucas():
    n = next_prime(10**30)
    assert is_prime(n, PrimalityPolicy(miller_rabin_rounds=1, use_lucas_stage=False))


def test_policy_rejects_zero_rounds():
    with pytest.raises(ValueError):
        PrimalityPolicy(miller_rabin_rounds=0)


def test_next_prime():
    assert next_prime(-5) == 2
    assert next_prime(2) == 3
    assert next_prime(13) == 17
    assert next_prime(10**12) == sympy.nextprime(10**12)
