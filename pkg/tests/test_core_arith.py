from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apery_lab.core_arith import (
    NotPIntegral,
    ResidueClass,
    binomial,
    half_binomial,
    is_prime,
    legendre_minus_one,
    odd_double_factorial,
    odd_primes_up_to,
    p_ary_digits,
    reduce_mod,
    residue_of,
)

primes = st.sampled_from(odd_primes_up_to(200))


def test_primes_and_legendre():
    assert odd_primes_up_to(20) == [3, 5, 7, 11, 13, 17, 19]
    assert [legendre_minus_one(p) for p in (3, 5, 7, 13)] == [-1, 1, -1, 1]
    with pytest.raises(ValueError):
        legendre_minus_one(9)
    with pytest.raises(ValueError):
        legendre_minus_one(2)
    assert not is_prime(1) and is_prime(97)


def test_binomials():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(-1, 3) == -1  # generalized: (-1)^k
    assert half_binomial(0) == 1
    assert half_binomial(1) == Fraction(-1, 2)
    assert half_binomial(2) == Fraction(3, 8)
    assert odd_double_factorial(3) == 15  # 1*3*5 = (2n-1)!! for n = 3


@given(st.integers(0, 40))
def test_half_binomial_closed_form(j):
    assert half_binomial(j) == Fraction((-1) ** j * binomial(2 * j, j), 4**j)


def test_reduce_mod_examples():
    assert reduce_mod(Fraction(3, 4), 3, 2) == ResidueClass(3, 3, 2)
    assert reduce_mod(Fraction(153, 64), 3, 2).value == 0
    with pytest.raises(NotPIntegral) as info:
        reduce_mod(Fraction(1, 3), 3, 1)
    assert info.value.p == 3
    with pytest.raises(ValueError):
        reduce_mod(1, 4, 1)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6), primes, st.integers(1, 4))
def test_reduce_mod_is_a_ring_map(num, den, p, r):
    x = Fraction(num, den)
    if x.denominator % p == 0:
        with pytest.raises(NotPIntegral):
            reduce_mod(x, p, r)
        return
    res = reduce_mod(x, p, r)
    assert 0 <= res.value < p**r
    assert (res.value * x.denominator - x.numerator) % p**r == 0
    assert residue_of(num, den, p, r) == res.value
    y = Fraction(num + 7, den)
    if y.denominator % p:
        assert reduce_mod(x + y, p, r) == res + reduce_mod(y, p, r)
        assert reduce_mod(x * y, p, r) == res * reduce_mod(y, p, r)


def test_residue_of_cancels_common_p():
    # 9/3 = 3 is p-integral although the unreduced denominator is divisible by 3
    assert residue_of(9, 3, 3, 2) == 3
    with pytest.raises(NotPIntegral):
        residue_of(2, 3, 3, 1)


@given(st.integers(0, 10**8), st.sampled_from([2, 3, 5, 7, 31]))
def test_p_ary_digits_roundtrip(n, p):
    digits = p_ary_digits(n, p)
    assert all(0 <= d < p for d in digits)
    assert sum(d * p**i for i, d in enumerate(digits)) == n
    assert not digits or digits[-1] != 0
