"""Truncated power series, polynomial-coefficient differential operators, eta products.

Coefficients may live in any module over the rationals that supports ``+``,
``-`` and multiplication by ``Fraction``/``int`` -- in practice ``Fraction``
or :class:`~apery_lab.zeta_ring.ZetaCombination`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .core_arith import binomial, half_binomial


@dataclass(frozen=True)
class TruncatedSeries:
    """f = c_0 + c_1 x + ... + c_N x^N + O(x^(N+1)); ``order`` is N."""

    coeffs: tuple
    zero: Any = field(default=Fraction(0), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a truncated series needs at least one coefficient")

    @classmethod
    def from_list(cls, coeffs: Sequence, zero=Fraction(0)) -> TruncatedSeries:
        return cls(tuple(coeffs), zero)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], self.zero)

    def _common(self, other: TruncatedSeries) -> int:
        return min(self.order, other.order)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = self._common(other)
        return TruncatedSeries(tuple(self[i] + other[i] for i in range(n + 1)), self.zero)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = self._common(other)
        return TruncatedSeries(tuple(self[i] - other[i] for i in range(n + 1)), self.zero)

    def scale(self, c) -> TruncatedSeries:
        return TruncatedSeries(tuple(a * c for a in self.coeffs), self.zero)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        """Cauchy product; at least one factor must have scalar coefficients."""
        n = self._common(other)
        out = []
        for i in range(n + 1):
            acc = _zero_like(self.zero, other.zero)
            for j in range(i + 1):
                acc = acc + _ring_mul(self[j], other[i - j])
            out.append(acc)
        return TruncatedSeries(tuple(out), _zero_like(self.zero, other.zero))

    def derivative(self) -> TruncatedSeries:
        if self.order == 0:
            raise ValueError("derivative of an order-0 series is unknown")
        return TruncatedSeries(tuple(self[n] * n for n in range(1, self.order + 1)), self.zero)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def _zero_like(z1, z2):
    # a ZetaCombination zero dominates a Fraction zero
    return z1 if not isinstance(z1, (int, Fraction)) else z2


def _ring_mul(a, b):
    if isinstance(a, (int, Fraction)) or isinstance(b, (int, Fraction)):
        return a * b if isinstance(b, (int, Fraction)) else b * a
    raise TypeError("product of two non-scalar coefficients is outside the module")


# --- differential operators -------------------------------------------------


@dataclass(frozen=True)
class PolyDiffOperator:
    """sum_i P_i(x) (d/dx)^i with ``parts[i]`` the coefficient list of P_i (low degree first)."""

    name: str
    parts: tuple

    @property
    def degree(self) -> int:
        return len(self.parts) - 1

    def apply(self, s: TruncatedSeries) -> TruncatedSeries:
        """Exact coefficients of the image, trusted up to order N - degree."""
        d = self.degree
        if s.order < d:
            raise ValueError(f"{self.name} needs a series of order >= {d}, got {s.order}")
        N = s.order
        out_order = N - d
        out = []
        for n in range(out_order + 1):
            acc = s.zero
            for i, poly in enumerate(self.parts):
                for e, c in enumerate(poly):
                    if not c or e > n:
                        continue
                    m = n - e  # coefficient of x^m in f^(i) is (m+1)_i a_{m+i}
                    idx = m + i
                    if idx > N:
                        continue
                    rising = 1
                    for t in range(1, i + 1):
                        rising *= m + t
                    if rising:
                        acc = acc + s[idx] * (c * rising)
            out.append(acc)
        return TruncatedSeries(tuple(out), s.zero)

    __call__ = apply


def _F(*xs):
    return tuple(Fraction(x) for x in xs)


HEUN = PolyDiffOperator(
    "D_H",
    (
        _F(Fraction(-3, 4), 1),  # t - 3/4
        _F(1, -4, 3),  # (1 - 3t)(1 - t)
        _F(0, 1, -2, 1),  # t (1 - t)^2
    ),
)

WEIGHTED = PolyDiffOperator(
    "D_W",
    (
        _F(3, 6),  # 3(1 + 2z)
        _F(8, 54, 54),  # 2(4 + 27z + 27z^2)
        _F(0, 24, 72, 48),  # 24 z (1 + z)(1 + 2z)
        _F(0, 0, 8, 16, 8),  # 8 z^2 (1 + z)^2
    ),
)

HYPERGEOMETRIC = PolyDiffOperator(
    "D_O",
    (
        _F(Fraction(-1, 4)),  # -1/4
        _F(1, -2),  # 1 - 2z
        _F(0, 1, -1),  # z (1 - z)
    ),
)


def heun_apply(s: TruncatedSeries) -> TruncatedSeries:
    """D_H = t(1-t)^2 d^2/dt^2 + (1-3t)(1-t) d/dt + t - 3/4."""
    return HEUN.apply(s)


def dw_apply(s: TruncatedSeries) -> TruncatedSeries:
    """D_W = 8z^2(1+z)^2 d^3 + 24z(1+z)(1+2z) d^2 + 2(4+27z+27z^2) d + 3(1+2z)."""
    return WEIGHTED.apply(s)


def do_apply(s: TruncatedSeries) -> TruncatedSeries:
    """D_O = z(1-z) d^2/dz^2 + (1-2z) d/dz - 1/4."""
    return HYPERGEOMETRIC.apply(s)


# --- coefficient streams ------------------------------------------------------


def hypergeometric_coeffs(a, b, c, N: int) -> TruncatedSeries:
    """Coefficients (a)_n (b)_n / ((c)_n n!) of 2F1(a, b; c; x), n = 0..N."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if N < 0:
        raise ValueError("N must be non-negative")
    coeffs = [Fraction(1)]
    for n in range(N):
        if c + n == 0:
            raise ValueError(f"(c)_n vanishes at n = {n + 1} for c = {c}")
        coeffs.append(coeffs[-1] * (a + n) * (b + n) / ((c + n) * (n + 1)))
    return TruncatedSeries(tuple(coeffs))


def p_poly(n: int) -> TruncatedSeries:
    """p_n(z) = -4/(2n+1)^2 binom(-1/2,n)^-2 sum_{k<=n} binom(-1/2,k)^2 z^k (exact polynomial)."""
    lead = Fraction(-4, (2 * n + 1) ** 2) / half_binomial(n) ** 2
    return TruncatedSeries(tuple(lead * half_binomial(k) ** 2 for k in range(n + 1)))


def pad(s: TruncatedSeries, order: int) -> TruncatedSeries:
    """Extend a *polynomial* by zeros (only valid when the higher coefficients really vanish)."""
    if order < s.order:
        return s.truncate(order)
    return TruncatedSeries(s.coeffs + (s.zero,) * (order - s.order), s.zero)


def mobius_transform_w_to_v(w: TruncatedSeries, N: int | None = None) -> TruncatedSeries:
    """Coefficients of v(z) = (1-t) w(t) with t = z/(z-1).

    Since 1-t = 1/(1-z) and t^m = (-1)^m z^m (1-z)^-m, the z^n coefficient is
    sum_m (-1)^m binom(n, m) w_m, so order N needs w up to order N.
    """
    if N is None:
        N = w.order
    if w.order < N:
        raise ValueError(f"need w of order >= {N}")
    out = []
    for n in range(N + 1):
        acc = w.zero
        for m in range(n + 1):
            c = binomial(n, m) if m % 2 == 0 else -binomial(n, m)
            acc = acc + w[m] * c
        out.append(acc)
    return TruncatedSeries(tuple(out), w.zero)


# --- eta products ---------------------------------------------------------------


class EtaKind(enum.Enum):
    LAMBDA = "lambda"  # eta(4 tau)^6 = q prod (1 - q^{4n})^6
    GAMMA = "gamma"  # eta(2 tau)^4 eta(4 tau)^4 = q prod (1 - q^{2n})^4 (1 - q^{4n})^4


@dataclass(frozen=True)
class EtaCoefficients:
    which: EtaKind
    coeffs: tuple  # coeffs[n] for n = 0..N, coeffs[0] = 0

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(f"eta coefficient index {n} outside 1..{self.N}")
        return self.coeffs[n]


def euler_function_coeffs(M: int) -> list[int]:
    """prod_{n>=1} (1 - x^n) up to x^M via the pentagonal number theorem."""
    out = [0] * (M + 1)
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e = kk * (3 * kk - 1) // 2
            if e <= M:
                out[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            return out
        k += 1


def _mul_sparse(dense: np.ndarray, sparse: Sequence[tuple[int, int]], M: int) -> np.ndarray:
    out = np.zeros(M + 1, dtype=object)
    out[:] = 0
    for e, c in sparse:
        if e <= M:
            out[e:] += c * dense[: M + 1 - e]
    return out


def _euler_power(M: int, exponent: int, stride: int = 1) -> np.ndarray:
    """prod (1 - x^{stride n})^exponent up to x^M (pentagonal route)."""
    pent = euler_function_coeffs(M // stride)
    sparse = [(i * stride, c) for i, c in enumerate(pent) if c]
    acc = np.zeros(M + 1, dtype=object)
    acc[:] = 0
    acc[0] = 1
    for _ in range(exponent):
        acc = _mul_sparse(acc, sparse, M)
    return acc


def _naive_power(M: int, factors: Sequence[tuple[int, int]]) -> np.ndarray:
    """prod over (stride, exponent) of prod_n (1 - x^{stride n})^exponent, factor by factor."""
    acc = np.zeros(M + 1, dtype=object)
    acc[:] = 0
    acc[0] = 1
    for stride, exponent in factors:
        for n in range(1, M // stride + 1):
            s = stride * n
            for _ in range(exponent):
                acc[s:] = acc[s:] - acc[: M + 1 - s]
    return acc


def _assemble(which: EtaKind, N: int, series: np.ndarray, step: int) -> EtaCoefficients:
    coeffs = [0] * (N + 1)
    for m, c in enumerate(series):
        n = step * m + 1
        if n <= N:
            coeffs[n] = int(c)
    return EtaCoefficients(which, tuple(coeffs))


def eta_coeffs(which: EtaKind | str, N: int, method: str = "pentagonal") -> EtaCoefficients:
    """q-expansion coefficients up to q^N; ``method`` is "pentagonal" or "naive"."""
    which = EtaKind(which)
    if N < 1:
        raise ValueError("N must be >= 1")
    if method not in ("pentagonal", "naive"):
        raise ValueError(f"unknown method {method!r}")
    if which is EtaKind.LAMBDA:
        M = (N - 1) // 4  # x = q^4
        if method == "pentagonal":
            series = _euler_power(M, 6)
        else:
            series = _naive_power(M, [(1, 6)])
        return _assemble(which, N, series, 4)
    M = (N - 1) // 2  # x = q^2: prod (1 - x^n)^4 (1 - x^{2n})^4
    if method == "pentagonal":
        a = _euler_power(M, 4)
        b = _euler_power(M, 4, stride=2)
        series = _dense_mul(a, b, M)
    else:
        series = _naive_power(M, [(1, 4), (2, 4)])
    return _assemble(which, N, series, 2)


def _dense_mul(a: np.ndarray, b: np.ndarray, M: int) -> np.ndarray:
    sparse = [(i, int(c)) for i, c in enumerate(b) if c]
    return _mul_sparse(a, sparse, M)
