"""Classical Apery numbers A2, B2 (for zeta(2)) and A3, B3 (for zeta(3)).

Two routes are provided: the binomial sums (:func:`apery_sum`) and the
three-term recurrences (:func:`apery_rec`).  :func:`apery_values_at` streams
the integer recurrence so that sweeps can pick out a few huge indices
without keeping the whole table in memory.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Iterator

from .core_arith import binomial

try:  # GMP-backed integers make the long streaming sweeps ~10x faster
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int


class ApFamily(enum.Enum):
    A2 = "a2"
    B2 = "b2"
    A3 = "a3"
    B3 = "b3"

    @property
    def zeta_arg(self) -> int:
        return 2 if self in (ApFamily.A2, ApFamily.B2) else 3

    @property
    def is_integral(self) -> bool:
        return self in (ApFamily.A2, ApFamily.A3)


INITIAL = {
    ApFamily.A2: (1, 3),
    ApFamily.B2: (0, 5),
    ApFamily.A3: (1, 5),
    ApFamily.B3: (0, 6),
}


def apery_sum(family: ApFamily, n: int) -> Fraction:
    """Exact value of the defining binomial sum."""
    if n < 0:
        raise ValueError("n must be non-negative")
    family = ApFamily(family)
    total = Fraction(0)
    if family is ApFamily.A2:
        return Fraction(sum(binomial(n, k) ** 2 * binomial(n + k, k) for k in range(n + 1)))
    if family is ApFamily.A3:
        return Fraction(sum(binomial(n, k) ** 2 * binomial(n + k, k) ** 2 for k in range(n + 1)))
    if family is ApFamily.B2:
        outer = 2 * sum(Fraction((-1) ** (m - 1), m * m) for m in range(1, n + 1))
        inner = Fraction(0)
        for k in range(n + 1):
            if k:
                inner += Fraction((-1) ** (n + k - 1), k * k * binomial(n, k) * binomial(n + k, k))
            total += binomial(n, k) ** 2 * binomial(n + k, k) * (outer + inner)
        return total
    outer = sum(Fraction(1, m**3) for m in range(1, n + 1))
    inner = Fraction(0)
    for k in range(n + 1):
        if k:
            inner += Fraction((-1) ** (k - 1), 2 * k**3 * binomial(n, k) * binomial(n + k, k))
        total += binomial(n, k) ** 2 * binomial(n + k, k) ** 2 * (outer + inner)
    return total


def _coefficients(zeta_arg: int, n: int) -> tuple[int, int, int]:
    """(lead, mid, low) with lead*u(n) = mid*u(n-1) + low*u(n-2)."""
    if zeta_arg == 2:
        return n * n, 11 * n * n - 11 * n + 3, (n - 1) ** 2
    return n**3, 34 * n**3 - 51 * n**2 + 27 * n - 5, -((n - 1) ** 3)


def _iterate(family: ApFamily) -> Iterator[int | Fraction]:
    u0, u1 = INITIAL[family]
    if family.is_integral:
        u0, u1 = _bigint(u0), _bigint(u1)
    else:
        u0, u1 = Fraction(u0), Fraction(u1)
    yield u0
    yield u1
    n = 2
    zeta_arg = family.zeta_arg
    while True:
        lead, mid, low = _coefficients(zeta_arg, n)
        rhs = mid * u1 + low * u0
        if family.is_integral:
            q, rem = divmod(rhs, lead)
            if rem:
                raise ArithmeticError(f"{family.name}({n}): inexact division by {lead}")
        else:
            q = rhs / lead
        u0, u1 = u1, q
        yield q
        n += 1


def apery_rec(family: ApFamily, n_max: int) -> list[Fraction]:
    """Values u(0..n_max) from the recurrence seeded with the known initial conditions."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    family = ApFamily(family)
    out = []
    for n, v in enumerate(_iterate(family)):
        out.append(Fraction(int(v)) if family.is_integral else v)
        if n == n_max:
            return out
    raise AssertionError("unreachable")


def apery_values_at(family: ApFamily, indices: Iterable[int]) -> dict[int, int | Fraction]:
    """Values at the requested indices, streaming the recurrence (O(1) big numbers held)."""
    family = ApFamily(family)
    wanted = set(indices)
    if not wanted:
        return {}
    if min(wanted) < 0:
        raise ValueError("indices must be non-negative")
    top = max(wanted)
    out = {}
    for n, v in enumerate(_iterate(family)):
        if n in wanted:
            out[n] = int(v) if family.is_integral else v
        if n == top:
            return out
    raise AssertionError("unreachable")
