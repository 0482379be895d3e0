"""Exact identity suites driven by ``apery-lab verify`` and the acceptance tests.

Each suite returns a :class:`SuiteResult`; a failure records the first
violating (k, n) together with both sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .apery_like import (
    closed_form_table,
    g_series,
    jk_recurrence,
    jk_table,
    theorem71_table,
    w_series,
)
from .normalized import decompose, tj
from .series_ops import (
    HEUN,
    HYPERGEOMETRIC,
    WEIGHTED,
    TruncatedSeries,
    hypergeometric_coeffs,
    p_poly,
    pad,
)
from .zeta_ring import ZERO, ZetaCombination


@dataclass
class Failure:
    identity: str
    k: int | None
    n: int | None
    lhs: str
    rhs: str

    def __str__(self):
        where = ", ".join(f"{name}={v}" for name, v in (("k", self.k), ("n", self.n)) if v is not None)
        return f"{self.identity} fails at {where}: lhs = {self.lhs}, rhs = {self.rhs}"


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: SuiteResult) -> SuiteResult:
        return SuiteResult(f"{self.suite}+{other.suite}", self.checked + other.checked,
                           self.failures + other.failures)


def _show(x) -> str:
    return x.display() if isinstance(x, ZetaCombination) else str(x)


def _compare_series(res: SuiteResult, label: str, k, lhs: TruncatedSeries, rhs_coeff) -> None:
    """Compare lhs[n] with rhs_coeff(n) for every n in lhs; record only the first mismatch."""
    for n in range(lhs.order + 1):
        res.checked += 1
        want = rhs_coeff(n)
        if lhs[n] != want:
            res.failures.append(Failure(label, k, n, _show(lhs[n]), _show(want)))
            return


# --- recurrence --------------------------------------------------------------------


def _independent_table(k: int, n_max: int):
    """J_k built without the three-term recurrence: closed forms for k <= 3, the inductive expression above."""
    if k <= 3:
        return closed_form_table(k, n_max)
    return theorem71_table(k, n_max)


def recurrence_suite(k_max: int = 8, n_max: int = 100, k_init_max: int = 12) -> SuiteResult:
    """4n^2 J_k(n) - (8n^2-8n+3) J_k(n-1) + 4(n-1)^2 J_k(n-2) = J_{k-2}(n) for 4 <= k <= k_max.

    The tables come from the inductive expression, so the check is not circular.  Also checks
    4 J_k(1) - 3 J_k(0) = J_{k-2}(1) for 3 <= k <= k_init_max.
    """
    if k_max < 2 or n_max < 2:
        raise ValueError("k_max and n_max must be >= 2")
    res = SuiteResult("recurrence")
    for k in range(4, k_max + 1):
        table = _independent_table(k, n_max)
        lower = _independent_table(k - 2, n_max)
        for n in range(2, n_max + 1):
            res.checked += 1
            lhs = table[n] * (4 * n * n) - table[n - 1] * (8 * n * n - 8 * n + 3) + table[n - 2] * (4 * (n - 1) ** 2)
            if lhs != lower[n]:
                res.failures.append(Failure("three-term recurrence", k, n, _show(lhs), _show(lower[n])))
                break
    for k in range(3, k_init_max + 1):
        res.checked += 1
        table = jk_table(k, 1)
        lower = jk_table(k - 2, 1)[1]
        lhs = table[1] * 4 - table[0] * 3
        if isinstance(lower, Fraction):
            lower = ZetaCombination.unit(lower)
        if lhs != lower:
            res.failures.append(Failure("initial relation", k, 1, _show(lhs), _show(lower)))
    return res


def route_suite(k_max: int = 6, n_max: int = 40) -> SuiteResult:
    """jk_recurrence, the inductive expression and (k = 2, 3) closed forms give identical tables."""
    res = SuiteResult("routes")
    for k in range(2, k_max + 1):
        rec = jk_recurrence(k, n_max)
        others = []
        if k >= 3:
            others.append(theorem71_table(k, n_max))
        if k <= 3:
            others.append(closed_form_table(k, n_max))
        for other in others:
            for n in range(n_max + 1):
                res.checked += 1
                if rec[n] != other[n]:
                    res.failures.append(Failure(f"route {other.provenance.value}", k, n,
                                                _show(rec[n]), _show(other[n])))
                    break
    return res


# --- differential operators ----------------------------------------------------------


def _shifted_quarter(table, k: int):
    """n -> J_k(n+1)/4, the coefficients of (w_k(t) - w_k(0))/(4t)."""
    def coeff(n):
        v = table[n + 1] / 4
        return ZetaCombination.unit(v) if isinstance(v, Fraction) else v
    return coeff


def heun_suite(order_w2: int = 200, order_w3: int = 150, order: int = 100, ks=(4, 5, 6)) -> SuiteResult:
    res = SuiteResult("heun")
    d = HEUN.degree
    _compare_series(res, "D_H w2 = 0", 2, HEUN.apply(w_series(2, order_w2 + d)), lambda n: ZERO)
    f = hypergeometric_coeffs(1, 1, Fraction(3, 2), order_w3)
    _compare_series(res, "D_H w3 = 2F1(1,1;3/2;t)/2", 3, HEUN.apply(w_series(3, order_w3 + d)),
                    lambda n: ZetaCombination.unit(f[n] / 2))
    for k in ks:
        lower = jk_table(k - 2, order + 1)
        _compare_series(res, "D_H w_k = (w_{k-2} - w_{k-2}(0))/(4t)", k,
                        HEUN.apply(w_series(k, order + d)), _shifted_quarter(lower, k - 2))
    return res


def dw_rhs_coeff(k: int, g_lower: TruncatedSeries | None):
    """Coefficient n of the right-hand side of D_W g_k.

    k = 2: 0.  k = 3: -2/(1+z).  k >= 4: 2 d/dz g_{k-2}(z), i.e. 2(n+1) b_{n+1}.
    (The k >= 4 case is also 2 d/dz of the k = 3 pattern with g_1 = -log(1+z).)
    """
    if k == 2:
        return lambda n: ZERO
    if k == 3:
        return lambda n: ZetaCombination.unit(-2 if n % 2 == 0 else 2)
    return lambda n: g_lower[n + 1] * (2 * (n + 1))


def dw_rhs_coeff_as_printed(g_lower: TruncatedSeries):
    """The k >= 4 right-hand side in the form 2z d/dz[(g_{k-2}(z) - g_{k-2}(0))/z]: 2n b_{n+1}.

    Kept for the record: this form does not match D_W g_k (see tests)."""
    return lambda n: g_lower[n + 1] * (2 * n)


def dw_suite(order: int = 100, ks=(2, 3, 4, 5)) -> SuiteResult:
    res = SuiteResult("weighted")
    d = WEIGHTED.degree
    for k in ks:
        g_lower = g_series(k - 2, order + 1) if k >= 4 else None
        _compare_series(res, "D_W g_k", k, WEIGHTED.apply(g_series(k, order + d)), dw_rhs_coeff(k, g_lower))
    return res


def do_suite(n_max: int = 80) -> SuiteResult:
    """D_O p_n = z^n for 0 <= n <= n_max."""
    res = SuiteResult("hypergeometric")
    d = HYPERGEOMETRIC.degree
    for n in range(n_max + 1):
        out = HYPERGEOMETRIC.apply(pad(p_poly(n), n + d + 1))
        _compare_series(res, f"D_O p_{n} = z^{n}", None, out, lambda m, n=n: Fraction(int(m == n)))
    return res


def ode_suite(order: int | None = None) -> SuiteResult:
    """All operator identities; ``order`` overrides every truncation order when given."""
    if order is None:
        parts = [heun_suite(), dw_suite(), do_suite()]
    else:
        if order < 4:
            raise ValueError("order must be >= 4")
        parts = [heun_suite(order, order, order), dw_suite(order), do_suite(min(order, 80))]
    res = parts[0]
    for p in parts[1:]:
        res = res.merge(p)
    res.suite = "ode"
    return res


# --- decomposition -------------------------------------------------------------------


def decomposition_suite(k_max: int = 8, n_max: int = 60) -> SuiteResult:
    """J_k(n) = sum_m zeta(k-2m, 1/2) tJ_{2m+..}(n): the normalized decomposition matches J_k."""
    res = SuiteResult("decomposition")
    tables = {kk: tj(kk, n_max) for kk in range(1, k_max + 1)}
    for k in range(2, k_max + 1):
        table = jk_table(k, n_max)
        for n in range(n_max + 1):
            if k == 1 and n == 0:
                continue
            res.checked += 1
            got = decompose(k, n, tables)
            if got != table[n]:
                res.failures.append(Failure("decomposition", k, n, _show(got), _show(table[n])))
                break
    return res


SUITES = {
    "recurrence": lambda k_max, n_max, order: recurrence_suite(k_max, n_max).merge(
        route_suite(min(k_max, 6), min(n_max, 40))),
    "ode": lambda k_max, n_max, order: ode_suite(order),
    "decomposition": lambda k_max, n_max, order: decomposition_suite(k_max, n_max),
}


def run_suite(name: str, k_max: int = 8, n_max: int = 100, order: int | None = None) -> SuiteResult:
    if name == "all":
        parts = [run_suite(s, k_max, n_max, order) for s in SUITES]
        res = parts[0]
        for p in parts[1:]:
            res = res.merge(p)
        res.suite = "all"
        return res
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    res = SUITES[name](k_max, n_max, order)
    res.suite = name
    return res
