"""Ascent operation, normalized Apery-like numbers tJ_k(n) and the S_k(p) sums.

tJ_1(n) = 2^n (n-1)!/(2n-1)!!, tJ_2(n) = J_2(n)/J_2(0), tJ_k = ascent(tJ_{k-2}).
Each J_k(n) decomposes over the basis zeta(k-2m, 1/2) with tJ coefficients
(:func:`decompose`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import mpmath

from .core_arith import binomial, half_binomial, odd_double_factorial
from .zeta_ring import UNIT, ZetaCombination, hurwitz_half, riemann_zeta


@dataclass(frozen=True)
class RationalSeq:
    """tJ_k(0..n_max); for k = 1 index 0 holds ``None`` (undefined)."""

    k: int
    values: tuple

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if len(self.values) > 1:
            half, odd = divmod(self.k, 2)
            expected = Fraction(2, 4**half) if odd else Fraction(3, 4**half)
            if self.values[1] != expected:
                raise ValueError(f"tJ_{self.k}(1) = {self.values[1]}, expected {expected}")

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.n_max:
            raise IndexError(f"tJ_{self.k}({n}) outside 0..{self.n_max}")
        if self.values[n] is None:
            raise IndexError(f"tJ_{self.k}({n}) is undefined")
        return self.values[n]

    def __len__(self):
        return len(self.values)


@lru_cache(maxsize=None)
def _alt_weight(p: int) -> Fraction:
    h = half_binomial(p)
    return h * h if p % 2 == 0 else -(h * h)


@lru_cache(maxsize=None)
def _inv_weight(i: int) -> Fraction:
    """-(2i+1)^-2 binom(-1/2,i)^-2."""
    return -1 / (Fraction((2 * i + 1) ** 2) * half_binomial(i) ** 2)


def _alt_binomial_sum(seq: Callable[[int], object], i: int, zero):
    """sum_{j<=i} (-1)^j binom(i,j) seq(j+1)."""
    acc = zero
    for j in range(i + 1):
        c = binomial(i, j)
        acc = acc + seq(j + 1) * (c if j % 2 == 0 else -c)
    return acc


def ascent_brackets(seq: Callable[[int], object], p_max: int, zero=Fraction(0)) -> list:
    """Partial sums B_p = sum_{i<p} -(2i+1)^-2 binom(-1/2,i)^-2 sum_j (-1)^j binom(i,j) seq(j+1)."""
    out = [zero]
    acc = zero
    for i in range(p_max):
        acc = acc + _alt_binomial_sum(seq, i, zero) * _inv_weight(i)
        out.append(acc)
    return out


def _as_callable(seq) -> Callable[[int], object]:
    if callable(seq):
        return seq
    return lambda n: seq[n]


def ascent(seq, n: int, zero=Fraction(0)):
    """The ascent of ``seq`` at n (``seq`` indexable or callable on 1..n); 0 for n <= 0."""
    if n <= 0:
        return zero
    brackets = ascent_brackets(_as_callable(seq), n, zero)
    acc = zero
    for p in range(n + 1):
        acc = acc + brackets[p] * (_alt_weight(p) * binomial(n, p))
    return acc


def ascent_table(seq, n_max: int, zero=Fraction(0)) -> list:
    """[ascent(seq)(n) for n = 0..n_max], sharing the bracket sums."""
    brackets = ascent_brackets(_as_callable(seq), n_max, zero)
    out = []
    for n in range(n_max + 1):
        acc = zero
        for p in range(n + 1):
            acc = acc + brackets[p] * (_alt_weight(p) * binomial(n, p))
        out.append(acc)
    return out


def tj1_value(n: int) -> Fraction:
    if n < 1:
        raise ValueError("tJ_1(n) is defined for n >= 1")
    return Fraction(2**n * math.factorial(n - 1), odd_double_factorial(n))


@lru_cache(maxsize=None)
def _tj2_value(n: int) -> Fraction:
    return sum((_alt_weight(p) * binomial(n, p) for p in range(n + 1)), Fraction(0))


@lru_cache(maxsize=64)
def _tj_values(k: int, n_max: int) -> tuple:
    if k == 1:
        return (None,) + tuple(tj1_value(n) for n in range(1, n_max + 1))
    if k == 2:
        return tuple(_tj2_value(n) for n in range(n_max + 1))
    lower = _tj_values(k - 2, n_max)
    return tuple(ascent_table(lambda j: lower[j], n_max))


def tj(k: int, n_max: int) -> RationalSeq:
    """Exact table tJ_k(0..n_max)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return RationalSeq(k, _tj_values(k, n_max))


def ascent_recurrence_check(seq, n_max: int) -> bool:
    """True iff 4n^2 a(n) - (8n^2-8n+3) a(n-1) + 4(n-1)^2 a(n-2) = seq(n) for 1 <= n <= n_max,
    where a is the ascent of seq and a(-1) = 0."""
    f = _as_callable(seq)
    asc = ascent_table(f, n_max)

    def a(n):
        return asc[n] if n >= 0 else Fraction(0)

    for n in range(1, n_max + 1):
        lhs = 4 * n * n * a(n) - (8 * n * n - 8 * n + 3) * a(n - 1) + 4 * (n - 1) ** 2 * a(n - 2)
        if lhs != f(n):
            return False
    return True


# --- S_k(p) ----------------------------------------------------------------------


class SRoute(enum.Enum):
    DEFINITION = "definition"
    RECURSION = "recursion"
    MULTISUM = "multisum"


@lru_cache(maxsize=None)
def _s3_values(p_max: int) -> tuple:
    out = [Fraction(0)]
    acc = Fraction(0)
    for i in range(p_max):
        acc += -2 / (Fraction((2 * i + 1) ** 3) * half_binomial(i) ** 2)
        out.append(acc)
    return tuple(out)


def _s_definition(k: int, p_max: int) -> list[Fraction]:
    if k == 2:
        return [Fraction(1)] * (p_max + 1)
    lower = _tj_values(k - 2, max(p_max, 1))
    return ascent_brackets(lambda j: lower[j], p_max)


def _s_recursion(k: int, p_max: int) -> list[Fraction]:
    if k == 2:
        return [Fraction(1)] * (p_max + 1)
    if k == 3:
        return list(_s3_values(p_max))
    lower = _s_recursion(k - 2, p_max)
    out = [Fraction(0)]
    acc = Fraction(0)
    for q in range(1, p_max + 1):
        acc += lower[q] / (2 * q) ** 2 - lower[q - 1] / (2 * q - 1) ** 2
        out.append(acc)
    return out


def epsilon(indices: Sequence[int]) -> int:
    """0 if some adjacent pair is equal and odd, else 1 (indices must be nondecreasing)."""
    for a, b in zip(indices, indices[1:]):
        if b < a:
            raise ValueError(f"indices must be nondecreasing: {list(indices)}")
    for a, b in zip(indices, indices[1:]):
        if a == b and a % 2 == 1:
            return 0
    return 1


def _tuple_sums_by_top(r: int, start: int, top: int) -> list[Fraction]:
    """by_top[m] = sum over nondecreasing (i_1..i_r), start <= i_1, i_r = m, epsilon = 1,
    of prod (-1)^i / i^2.  Tuples with a repeated odd index are pruned as they are built."""
    by_top = [Fraction(0)] * (top + 1)

    def extend(depth: int, lo: int, prev: int, sign: int, denom: int):
        for i in range(lo, top + 1):
            if i == prev and i % 2 == 1:
                continue
            s = -sign if i % 2 else sign
            d = denom * i * i
            if depth == r:
                by_top[i] += Fraction(s, d)
            else:
                extend(depth + 1, i, i, s, d)

    extend(1, start, -1, 1, 1)
    return by_top


def _s_multisum(k: int, p_max: int) -> list[Fraction]:
    if k < 4:
        raise ValueError("the multiple-sum form needs k >= 4")
    top = 2 * p_max
    if k % 2 == 0:
        r = (k - 2) // 2
        by_top = _tuple_sums_by_top(r, 1, top)
        prefix = [Fraction(0)]
        for m in range(1, top + 1):
            prefix.append(prefix[-1] + by_top[m])
        return [prefix[2 * p] for p in range(p_max + 1)]
    r = (k - 3) // 2
    prefix_total = [Fraction(0)] * (top + 1)
    for j in range(1, p_max + 1):
        odd = 2 * j - 1
        # the S_3 factor carries its -2
        weight = -2 / (Fraction(odd**3) * half_binomial(j - 1) ** 2)
        by_top = _tuple_sums_by_top(r, odd + 1, top)
        running = Fraction(0)
        for m in range(odd + 1, top + 1):
            running += by_top[m]
            prefix_total[m] += weight * running
    return [prefix_total[2 * p] if p else Fraction(0) for p in range(p_max + 1)]


def s_table(k: int, p_max: int, route: SRoute | str = SRoute.DEFINITION) -> list[Fraction]:
    """[S_k(p) for p = 0..p_max] by the chosen route."""
    route = SRoute(route)
    if k < 2:
        raise ValueError("k must be >= 2")
    if route is SRoute.DEFINITION:
        return _s_definition(k, p_max)
    if route is SRoute.RECURSION:
        return _s_recursion(k, p_max)
    return _s_multisum(k, p_max)


def s_poly(k: int, p: int, route: SRoute | str = SRoute.DEFINITION) -> Fraction:
    if p < 0:
        raise ValueError("p must be non-negative")
    return s_table(k, p, route)[p]


def tj_from_s(k: int, n: int, s_values: Sequence[Fraction]) -> Fraction:
    """tJ_k(n) = sum_p (-1)^p binom(-1/2,p)^2 binom(n,p) S_k(p)."""
    return sum((_alt_weight(p) * binomial(n, p) * s_values[p] for p in range(n + 1)), Fraction(0))


def s_limit(r: int):
    """lim_p S_{2r+2}(p) = -zeta(2r)/2^(2r-1) for r >= 1; 1 for r = 0 (S_2)."""
    if r == 0:
        return mpmath.mpf(1)
    return -riemann_zeta(2 * r, 1e-20) / 2 ** (2 * r - 1)


def s_limit_check(r: int, p_large: int, tol: float) -> bool:
    if p_large < 1 or tol <= 0:
        raise ValueError("need p_large >= 1 and tol > 0")
    value = s_poly(2 * r + 2, p_large, SRoute.RECURSION)
    with mpmath.workdps(30):
        diff = mpmath.mpf(value.numerator) / value.denominator - s_limit(r)
        return abs(diff) < tol


# --- decomposition -----------------------------------------------------------------


def decompose(k: int, n: int, tj_tables: dict[int, RationalSeq] | None = None) -> ZetaCombination:
    """sum_{m < floor(k/2)} zeta(k-2m, 1/2) tJ_{2m+2}(n) + (1-(-1)^k)/2 tJ_k(n)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if tj_tables is None:
        tj_tables = {}

    def table(kk):
        t = tj_tables.get(kk)
        if t is None or t.n_max < n:
            t = tj(kk, max(n, 1))
        return t

    terms = {hurwitz_half(k - 2 * m): table(2 * m + 2)[n] for m in range(k // 2)}
    if k % 2:
        terms[UNIT] = table(k)[n]
    return ZetaCombination(terms)


# --- fast providers for long congruence sweeps ------------------------------------------

try:
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int


def tj2_scaled_values_at(indices) -> dict[int, int]:
    """{n: 16^n tJ_2(n)} (integers), streaming n^2 U(n) = 4(8n^2-8n+3) U(n-1) - 256(n-1)^2 U(n-2)."""
    wanted = set(indices)
    if not wanted:
        return {}
    if min(wanted) < 0:
        raise ValueError("indices must be non-negative")
    top = max(wanted)
    out = {}
    u0, u1 = _bigint(1), _bigint(12)
    for n, v in ((0, u0), (1, u1)):
        if n in wanted:
            out[n] = int(v)
    for n in range(2, top + 1):
        rhs = 4 * (8 * n * n - 8 * n + 3) * u1 - 256 * (n - 1) ** 2 * u0
        q, rem = divmod(rhs, n * n)
        if rem:
            raise ArithmeticError(f"16^n tJ_2({n}): inexact division")
        u0, u1 = u1, q
        if n in wanted:
            out[n] = int(q)
    return out


@lru_cache(maxsize=32)
def tj_rec_values(k: int, n_max: int) -> tuple:
    """tJ_k(0..n_max) from 4n^2 a(n) - (8n^2-8n+3) a(n-1) + 4(n-1)^2 a(n-2) = tJ_{k-2}(n).

    Linear in n_max, unlike the ascent sums; agrees with :func:`tj` (tested).
    """
    if k == 1:
        return _tj_values(1, n_max)
    if k == 2:
        vals = [Fraction(1), Fraction(3, 4)]
        lower = None
    else:
        lower = tj_rec_values(k - 2, n_max)
        vals = [Fraction(0), lower[1] / 4]
    for n in range(2, n_max + 1):
        rhs = (8 * n * n - 8 * n + 3) * vals[n - 1] - 4 * (n - 1) ** 2 * vals[n - 2]
        if lower is not None:
            rhs += lower[n]
        vals.append(rhs / (4 * n * n))
    return tuple(vals[: n_max + 1])
