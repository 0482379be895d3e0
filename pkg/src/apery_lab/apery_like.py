"""Higher Apery-like numbers J_k(n) as exact :class:`ZetaCombination` values.

Three independent exact routes:

* closed forms for k = 2, 3 (:func:`j2`, :func:`j3`);
* the three-term recurrence 4n^2 J_k(n) - (8n^2-8n+3) J_k(n-1) + 4(n-1)^2 J_k(n-2) = J_{k-2}(n)
  run bottom-up over k of fixed parity (:func:`jk_recurrence`);
* the inductive binomial-transform expression of J_k in terms of J_{k-2}
  (:func:`jk_theorem71`).

Plus a floating-point infinite-series oracle (:func:`jk_series_numeric`) and the
special values zeta_Q(2), zeta_Q(3) of the spectral zeta function (:func:`zeta_q`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core_arith import binomial, half_binomial, odd_double_factorial
from .series_ops import TruncatedSeries, hypergeometric_coeffs
from .zeta_ring import UNIT, ZERO, ZetaCombination, hurwitz_half, hurwitz_half_value, zc_eval


class Provenance(enum.Enum):
    CLOSED_FORM = "closed_form"
    RECURRENCE = "recurrence"
    THEOREM71 = "theorem71"


@dataclass(frozen=True)
class JTable:
    """J_k(0..n_max).  For k = 1 only n >= 1 is defined."""

    k: int
    values: tuple
    provenance: Provenance

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.k >= 2 and self.values[0] != ZetaCombination.hurwitz(self.k):
            raise ValueError(f"J_{self.k}(0) must equal zeta({self.k}, 1/2)")

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> ZetaCombination:
        if n < 0 or n > self.n_max:
            raise IndexError(f"J_{self.k}({n}) outside table range 0..{self.n_max}")
        if self.k == 1 and n == 0:
            raise IndexError("J_1(0) is undefined")
        return self.values[n]

    def __len__(self):
        return len(self.values)


def j1_value(n: int) -> Fraction:
    """J_1(n) = 2^n (n-1)! / (2n-1)!!, the natural k = 1 extension (n >= 1)."""
    if n < 1:
        raise ValueError("J_1(n) is defined for n >= 1 only")
    return Fraction(2**n * math.factorial(n - 1), odd_double_factorial(n))


def j1_table(n_max: int) -> JTable:
    values = (None,) + tuple(ZetaCombination.unit(j1_value(n)) for n in range(1, n_max + 1))
    return JTable(1, values, Provenance.CLOSED_FORM)


# --- closed forms (k = 2, 3) --------------------------------------------------


@lru_cache(maxsize=None)
def _alt_weight(p: int) -> Fraction:
    """(-1)^p binom(-1/2, p)^2."""
    h = half_binomial(p)
    return h * h if p % 2 == 0 else -(h * h)


@lru_cache(maxsize=None)
def _s3_prefix(j: int) -> Fraction:
    """sum_{m<j} (2m+1)^-3 binom(-1/2,m)^-2."""
    if j == 0:
        return Fraction(0)
    m = j - 1
    return _s3_prefix(m) + 1 / (Fraction((2 * m + 1) ** 3) * half_binomial(m) ** 2)


def _ratio_part(n: int) -> Fraction:
    return sum((_alt_weight(j) * binomial(n, j) for j in range(n + 1)), Fraction(0))


def j2(n: int) -> ZetaCombination:
    """J_2(n) = 3 zeta(2) sum_j (-1)^j binom(-1/2,j)^2 binom(n,j)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return ZetaCombination.hurwitz(2, _ratio_part(n))


def j3(n: int) -> ZetaCombination:
    """J_3(n) = 7 zeta(3) * (same sum) - 2 sum_j (-1)^j binom(-1/2,j)^2 binom(n,j) S(j)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    rational = Fraction(0)
    for j in range(n + 1):
        rational += _alt_weight(j) * binomial(n, j) * _s3_prefix(j)
    return ZetaCombination({hurwitz_half(3): _ratio_part(n), UNIT: -2 * rational})


def closed_form_table(k: int, n_max: int) -> JTable:
    if k == 2:
        f = j2
    elif k == 3:
        f = j3
    else:
        raise ValueError("closed forms exist only for k = 2, 3")
    return JTable(k, tuple(f(n) for n in range(n_max + 1)), Provenance.CLOSED_FORM)


# --- recurrence route -----------------------------------------------------------


def jk_initial(k: int) -> tuple[ZetaCombination, ZetaCombination]:
    """(J_k(0), J_k(1)) = (zeta(k,1/2), 3/4 sum_m 4^-m zeta(k-2m,1/2) + (1-(-1)^k)/2^(k-1))."""
    if k < 2:
        raise ValueError("k must be >= 2")
    j0 = ZetaCombination.hurwitz(k)
    terms = {hurwitz_half(k - 2 * m): Fraction(3, 4) / 4**m for m in range(k // 2)}
    terms[UNIT] = Fraction(1 - (-1) ** k, 2 ** (k - 1))
    return j0, ZetaCombination(terms)


@lru_cache(maxsize=64)
def _recurrence_values(k: int, n_max: int) -> tuple:
    if k == 1:
        return j1_table(n_max).values
    lower = _recurrence_values(k - 2, n_max) if k >= 3 else None
    j0, j1 = jk_initial(k)
    vals = [j0, j1]
    for n in range(2, n_max + 1):
        rhs = vals[n - 1] * (8 * n * n - 8 * n + 3) - vals[n - 2] * (4 * (n - 1) ** 2)
        if lower is not None:
            rhs = rhs + lower[n]
        vals.append(rhs * Fraction(1, 4 * n * n))
    return tuple(vals[: n_max + 1])


def jk_recurrence(k: int, n_max: int) -> JTable:
    """J_k(0..n_max) by the three-term recurrence, built bottom-up from k = 2 or 3.

    The k = 3 base uses the J_1 convention, whose right-hand side equals the
    known inhomogeneous term 2^n (n-1)!/(2n-1)!!.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return JTable(k, _recurrence_values(k, n_max), Provenance.RECURRENCE)


def jk_table(k: int, n_max: int) -> JTable:
    """Default table: recurrence route (J_1 convention for k = 1)."""
    if k == 1:
        return j1_table(n_max)
    return jk_recurrence(k, max(n_max, 1)) if n_max >= 1 else JTable(
        k, (ZetaCombination.hurwitz(k),), Provenance.RECURRENCE
    )


# --- inductive expression route ---------------------------------------------------


def _theorem71_brackets(k: int, p_max: int, lower: JTable) -> list[ZetaCombination]:
    """B_p = zeta(k,1/2) - sum_{i<p} (2i+1)^-2 binom(-1/2,i)^-2 sum_j (-1)^j binom(i,j) J_{k-2}(j+1)."""
    out = [ZetaCombination.hurwitz(k)]
    acc = ZetaCombination.hurwitz(k)
    for i in range(p_max):
        inner = ZERO
        for j in range(i + 1):
            c = binomial(i, j) if j % 2 == 0 else -binomial(i, j)
            inner = inner + lower[j + 1] * c
        weight = 1 / (Fraction((2 * i + 1) ** 2) * half_binomial(i) ** 2)
        acc = acc - inner * weight
        out.append(acc)
    return out


def jk_theorem71(k: int, n: int, lower_table: JTable) -> ZetaCombination:
    """J_k(n) from the table of J_{k-2}(1..n) by the inductive expression.

    Valid for k >= 4; k = 3 with the J_1 table is the formal extension that
    reproduces the closed form of J_3.
    """
    if k < 3:
        raise ValueError("the inductive expression needs k >= 3")
    if lower_table.k != k - 2:
        raise ValueError(f"lower table has k = {lower_table.k}, expected {k - 2}")
    if lower_table.n_max < n:
        raise ValueError(f"lower table must cover indices 1..{n}")
    brackets = _theorem71_brackets(k, n, lower_table)
    acc = ZERO
    for p in range(n + 1):
        acc = acc + brackets[p] * (_alt_weight(p) * binomial(n, p))
    return acc


def theorem71_table(k: int, n_max: int, lower_table: JTable | None = None) -> JTable:
    """J_k(0..n_max) by the inductive expression, building lower tables the same way."""
    if k < 3:
        raise ValueError("the inductive expression needs k >= 3")
    if lower_table is None:
        if k - 2 == 1:
            lower_table = j1_table(n_max)
        elif k - 2 in (2, 3):
            lower_table = closed_form_table(k - 2, n_max)
        else:
            lower_table = theorem71_table(k - 2, n_max)
    brackets = _theorem71_brackets(k, n_max, lower_table)
    values = []
    for n in range(n_max + 1):
        acc = ZERO
        for p in range(n + 1):
            acc = acc + brackets[p] * (_alt_weight(p) * binomial(n, p))
        values.append(acc)
    return JTable(k, tuple(values), Provenance.THEOREM71)


# --- infinite-series oracle -----------------------------------------------------------


def _series_prefactor(k: int, n: int) -> float:
    # 2^k 4^n n!/(2n)! times the 4^n n! of the n-th forward difference with step 4
    return float(Fraction(2**k * 16**n * math.factorial(n) ** 2, math.factorial(2 * n)))


def series_tail_bound(k: int, n: int, L: int) -> float:
    """Upper bound on sum_{l >= L} of the series terms.

    Uses (l+1)_{2n} <= (l+2n)^{2n}, prod (2l+4i+1) >= (2l+1)^{n+1}, the
    mean-value bound on the n-th difference of x^-(k-1), and
    sum_{l >= L} (2l+1)^-k <= (2L)^(1-k) / (2(k-1)).
    """
    if k < 2 or L < 1:
        raise ValueError("need k >= 2 and L >= 1")
    s = k - 1
    rising = math.prod(range(s, s + n)) if n else 1
    A = 2**k * 16**n * math.factorial(n) / math.factorial(2 * n) * rising
    rho = 0.5 * (1 + max(4 * n - 1, 0) / (2 * L + 1))
    return A * rho ** (2 * n) * (2 * L) ** (1 - k) / (2 * (k - 1))


def series_truncation(k: int, n: int, tol: float) -> int:
    """Smallest L with ``series_tail_bound(k, n, L) < tol``."""
    hi = 16
    while series_tail_bound(k, n, hi) >= tol:
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if series_tail_bound(k, n, mid) < tol:
            hi = mid
        else:
            lo = mid
    return hi


def _series_terms(k: int, n: int, l: np.ndarray) -> np.ndarray:
    s = k - 1
    x = [2.0 * l + 1.0 + 4.0 * i for i in range(n + 1)]
    # |f[x_r..x_n]| for f = x^-level, via the Leibniz rule for divided differences;
    # all products share the sign (-1)^(n-r), so absolute values add without cancellation
    tails = [np.ones_like(l)]  # tails[j] = 1 / (x_{n-j+1} ... x_n) built from the right
    for q in range(n, -1, -1):
        tails.append(tails[-1] / x[q])
    E = [tails[n - r + 1] for r in range(n + 1)]  # level 1: 1 / (x_r ... x_n)
    for level in range(2, s + 1):
        rows = range(1) if level == s else range(n + 1)
        new = []
        for r in rows:
            acc = np.zeros_like(l)
            prod = np.ones_like(l)
            for q in range(r, n + 1):
                prod = prod / x[q]
                acc += prod * E[q]
            new.append(acc)
        E = new
    diff = E[0]
    ratio = np.ones_like(l)
    for i in range(1, 2 * n + 1):
        ratio *= l + i
    ratio *= tails[n + 1]  # 1 / prod x_i
    return _series_prefactor(k, n) * ratio * diff


def jk_series_numeric(k: int, n: int, L: int, chunk: int = 1 << 18) -> float:
    """Partial sum of the first L terms (l = 0..L-1) of the infinite-series expression of J_k(n).

    Floating point; an independent oracle for the exact values.  The
    remainder is bounded by :func:`series_tail_bound`.
    """
    if k < 2 or n < 0 or L < 1:
        raise ValueError("need k >= 2, n >= 0, L >= 1")
    partials = []
    for start in range(0, L, chunk):
        l = np.arange(start, min(L, start + chunk), dtype=np.float64)
        partials.append(float(np.sum(_series_terms(k, n, l))))
    return math.fsum(partials)


# --- zeta_Q(2), zeta_Q(3) --------------------------------------------------------------


@dataclass(frozen=True)
class ZetaQParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")
        if self.alpha * self.beta <= 2:
            raise ValueError(
                f"alpha*beta = {self.alpha * self.beta} <= 2: the g-series diverges "
                "(convergence needs alpha*beta > 2)"
            )

    @property
    def x(self) -> float:
        return 1.0 / (self.alpha * self.beta - 1.0)


@dataclass(frozen=True)
class ZetaQResult:
    s: int
    value: float
    g_exact: float  # g_s(x) from the exact J_s coefficients
    g_closed: float  # g_s(x) from the 2F1 closed forms
    terms: int
    error_bound: float


def _g_exact(s: int, x: float, tol: float) -> tuple[float, int, float]:
    """sum_n binom(-1/2,n) J_s(n) x^n with the geometric tail bound J_s(0) x^(N+1)/(1-x).

    0 <= J_s(n) <= J_s(0) because the integrand ratio is at most 1.
    """
    j0 = float(hurwitz_half_value(s, 1e-17))
    vals = {m: float(hurwitz_half_value(m, 1e-17)) for m in range(2, s + 1)}
    N = 1
    while j0 * x ** (N + 1) / (1 - x) >= tol / 4:
        N += 1
    table = jk_recurrence(s, max(N, 1))
    total = 0.0
    for n in range(N + 1):
        jn = table[n]
        val = float(jn.unit_part) + sum(float(c) * vals[m] for m, c in jn.terms.items() if m != UNIT)
        total += float(half_binomial(n)) * val * x**n
    return total, N, j0 * x ** (N + 1) / (1 - x)


def _tilde_g2(x: float, tol: float) -> float:
    """2F1(1/4, 3/4; 1; -x)^2; coefficients are at most 1 in absolute value."""
    N = 1
    while x ** (N + 1) / (1 - x) >= tol / 8:
        N += 1
    c = hypergeometric_coeffs(Fraction(1, 4), Fraction(3, 4), 1, N)
    f = math.fsum(float(c[n]) * (-x) ** n for n in range(N + 1))
    return f * f


def _tilde_g3(x: float, tol: float) -> float:
    """(-2/sqrt(1+x)) sum_{n>=1} (-1)^n binom(-1/2,n)^3 y^n S(n), y = x/(1+x).

    |binom(-1/2,n)| <= 1 and S(n) < 3.5 (binom(-1/2,j)^-2 <= 4j + 1), so the
    tail after N terms is at most 7 y^(N+1)/(1-y).
    """
    y = x / (1 + x)
    N = 1
    while 7 * y ** (N + 1) / (1 - y) >= tol / 4:
        N += 1
    terms = []
    for n in range(1, N + 1):
        h = half_binomial(n)
        terms.append(float((-1) ** n * h**3 * _s3_prefix(n)) * y**n)
    return -2 / math.sqrt(1 + x) * math.fsum(terms)


def g_closed(s: int, x: float, tol: float = 1e-12) -> float:
    """g_2 = J_2(0) tg_2, g_3 = J_3(0) tg_2 + tg_3."""
    tg2 = _tilde_g2(x, tol / 10)
    if s == 2:
        return float(hurwitz_half_value(2, 1e-17)) * tg2
    if s == 3:
        return float(hurwitz_half_value(3, 1e-17)) * tg2 + _tilde_g3(x, tol / 2)
    raise ValueError("closed forms exist for s = 2, 3 only")


def zeta_q_detail(s: int, params: ZetaQParams, tol: float = 1e-10) -> ZetaQResult:
    if s not in (2, 3):
        raise ValueError("s must be 2 or 3")
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = params.alpha, params.beta
    x = params.x
    scale = (a + b) / (2 * math.sqrt(a * b * (a * b - 1)))
    skew = ((a - b) / (a + b)) ** 2
    mult = 1 if s == 2 else 3
    g_a, terms, tail = _g_exact(s, x, tol)
    g_b = g_closed(s, x, tol)
    if abs(g_a - g_b) > max(tol, 1e-12 * abs(g_a)):
        raise ArithmeticError(f"g_{s} routes disagree: {g_a!r} vs {g_b!r}")
    value = 2 * scale**s * (float(hurwitz_half_value(s, 1e-17)) + mult * skew * g_a)
    bound = 2 * scale**s * mult * skew * tail
    return ZetaQResult(s, value, g_a, g_b, terms, bound)


def zeta_q(s: int, params: ZetaQParams, tol: float = 1e-10) -> float:
    """zeta_Q(s) for s = 2, 3 (requires alpha*beta > 2)."""
    return zeta_q_detail(s, params, tol).value


def g_partial_sums(s: int, x: float, n_terms: list[int]) -> list[float]:
    """Partial sums of the exact-coefficient g_s series (truncation-convergence checks)."""
    top = max(n_terms)
    table = jk_recurrence(s, max(top, 1))
    vals = {m: float(hurwitz_half_value(m, 1e-17)) for m in range(2, s + 1)}
    out = []
    for N in n_terms:
        total = 0.0
        for n in range(N + 1):
            jn = table[n]
            v = float(jn.unit_part) + sum(float(c) * vals[m] for m, c in jn.terms.items() if m != UNIT)
            total += float(half_binomial(n)) * v * x**n
        out.append(total)
    return out


# --- generating-function truncations --------------------------------------------------


def w_series(k: int, N: int) -> TruncatedSeries:
    """w_k(t) = sum J_k(n) t^n up to order N (ZetaCombination coefficients)."""
    table = jk_table(k, N)
    return TruncatedSeries(tuple(table.values[: N + 1]), ZERO)


def g_series(k: int, N: int) -> TruncatedSeries:
    """g_k(z) = sum binom(-1/2,n) J_k(n) z^n up to order N."""
    table = jk_table(k, N)
    return TruncatedSeries(tuple(table[n] * half_binomial(n) for n in range(N + 1)), ZERO)


def numeric_value(z: ZetaCombination, tol: float = 1e-12) -> float:
    return float(zc_eval(z, tol))
