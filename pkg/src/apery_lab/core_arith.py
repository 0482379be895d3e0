"""Exact integer/rational primitives shared by the rest of the package.

Rationals are :class:`fractions.Fraction` (always stored reduced).  Residues
modulo odd prime powers are :class:`ResidueClass` values obtained through
:func:`reduce_mod`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rational = Fraction

__all__ = [
    "Rational",
    "ResidueClass",
    "NotPIntegral",
    "binomial",
    "half_binomial",
    "odd_double_factorial",
    "legendre_minus_one",
    "reduce_mod",
    "residue_of",
    "p_ary_digits",
    "is_prime",
    "odd_primes_up_to",
]


class NotPIntegral(ArithmeticError):
    """Raised when a rational cannot be reduced mod p^r (p divides its denominator)."""

    def __init__(self, value, p):
        super().__init__(f"{value} is not {p}-integral")
        self.value = value
        self.p = p


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def odd_primes_up_to(n: int) -> list[int]:
    """Odd primes p with 3 <= p <= n (sieve of Eratosthenes)."""
    if n < 3:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(3, n + 1) if sieve[i]]


def _require_odd_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"expected an odd prime, got {p}")


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient n(n-1)...(n-k+1)/k! for integer n, k >= 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if n >= 0:
        return math.comb(n, k)
    # binom(-m, k) = (-1)^k binom(m+k-1, k)
    return (-1) ** k * math.comb(-n + k - 1, k)


@lru_cache(maxsize=None)
def half_binomial(j: int) -> Fraction:
    """binom(-1/2, j) = (-1)^j binom(2j, j) / 4^j."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return Fraction((-1) ** j * math.comb(2 * j, j), 4**j)


@lru_cache(maxsize=None)
def odd_double_factorial(n: int) -> int:
    """(2n-1)!! = 1*3*5*...*(2n-1); equals 1 for n = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    return odd_double_factorial(n - 1) * (2 * n - 1)


def legendre_minus_one(p: int) -> int:
    """The Legendre symbol (-1/p) = (-1)^((p-1)/2) for an odd prime p."""
    _require_odd_prime(p)
    return 1 if p % 4 == 1 else -1


@dataclass(frozen=True)
class ResidueClass:
    value: int
    prime: int
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} outside [0, {self.modulus})")

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def _check(self, other: ResidueClass) -> None:
        if (self.prime, self.exponent) != (other.prime, other.exponent):
            raise ValueError("residue classes have different moduli")

    def __add__(self, other: ResidueClass) -> ResidueClass:
        self._check(other)
        return ResidueClass((self.value + other.value) % self.modulus, self.prime, self.exponent)

    def __sub__(self, other: ResidueClass) -> ResidueClass:
        self._check(other)
        return ResidueClass((self.value - other.value) % self.modulus, self.prime, self.exponent)

    def __mul__(self, other: ResidueClass) -> ResidueClass:
        self._check(other)
        return ResidueClass((self.value * other.value) % self.modulus, self.prime, self.exponent)

    def __str__(self) -> str:
        return f"{self.value} (mod {self.prime}^{self.exponent})"


def residue_of(num: int, den: int, p: int, r: int) -> int:
    """num/den mod p^r as an integer in [0, p^r), without building a Fraction.

    ``den`` need not be coprime to ``num``; only p-integrality of the quotient
    matters, so common factors of p are cancelled first.
    """
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num, den = -num, -den
    if num == 0:
        return 0
    while den % p == 0:
        if num % p:
            raise NotPIntegral(Fraction(num, den), p)
        num //= p
        den //= p
    mod = p**r
    return num * pow(den, -1, mod) % mod


def reduce_mod(x, p: int, r: int) -> ResidueClass:
    """Reduce a p-integral rational modulo p^r.

    Raises :class:`NotPIntegral` when p divides the (reduced) denominator.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    _require_odd_prime(p)
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NotPIntegral(x, p)
    mod = p**r
    return ResidueClass(x.numerator * pow(x.denominator, -1, mod) % mod, p, r)


def p_ary_digits(n: int, p: int) -> list[int]:
    """Base-p digits of n, least significant first; [] for n = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    digits = []
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    return digits
