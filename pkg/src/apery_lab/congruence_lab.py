"""Registry of congruence checks for Apery and normalized Apery-like numbers.

Each check walks a parameter grid, forms LHS - RHS exactly and reduces it
modulo p^e.  Values that are not p-integral are reported with status
``NOT_P_INTEGRAL`` rather than dropped.

The three-term (Atkin-Swinnerton-Dyer type) checks read the sequence as 0 at
non-integral or negative indices.  So for r = 1 the lowest term is present
only when p divides m.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .classical_apery import ApFamily, apery_values_at
from .core_arith import (
    NotPIntegral,
    ResidueClass,
    binomial,
    legendre_minus_one,
    odd_primes_up_to,
    p_ary_digits,
    residue_of,
)
from .normalized import tj2_scaled_values_at, tj_rec_values
from .series_ops import EtaKind, eta_coeffs


class CheckId(enum.Enum):
    PARY_A2 = "PARY_A2"
    PARY_A3 = "PARY_A3"
    BEUKERS_A2 = "BEUKERS_A2"
    BEUKERS_A3 = "BEUKERS_A3"
    ASD_A2 = "ASD_A2"
    ASD_A3 = "ASD_A3"
    PARY_TJ2 = "PARY_TJ2"
    SCALE_TJ2 = "SCALE_TJ2"
    SCALE_TJ3 = "SCALE_TJ3"
    SUM_TJ2 = "SUM_TJ2"
    HALF_TJ2_A2 = "HALF_TJ2_A2"
    SUPER_A2_LAMBDA = "SUPER_A2_LAMBDA"
    MORTENSON = "MORTENSON"
    OS_HALF = "OS_HALF"
    CONJ_SUMSQ = "CONJ_SUMSQ"
    CONJ_KO = "CONJ_KO"
    CONJ_ASD_TJ2 = "CONJ_ASD_TJ2"
    CONJ_SUM_TJ2K = "CONJ_SUM_TJ2K"

    @property
    def is_conjecture(self) -> bool:
        return self.name.startswith("CONJ_")

    @classmethod
    def parse(cls, name: str) -> CheckId:
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown check {name!r}") from None


class Status(enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    NOT_P_INTEGRAL = "NOT_P_INTEGRAL"


@dataclass(frozen=True)
class CongruenceReport:
    """One grid point of one check.  ``params`` always carries p and the exponent e."""

    check: CheckId
    params: dict
    status: Status
    lhs_residue: ResidueClass | None = None
    rhs_residue: ResidueClass | None = None
    witness: dict | None = None
    note: str = ""

    def __post_init__(self):
        if self.status is Status.FAILS and self.witness is None:
            raise ValueError("a FAILS report needs a witness")
        if self.status is Status.HOLDS and self.lhs_residue is not None:
            if self.lhs_residue != self.rhs_residue:
                raise ValueError("HOLDS with different residues")

    def sort_key(self) -> tuple:
        order = list(CheckId).index(self.check)
        pr = self.params
        return (order, pr["p"], pr.get("k", 0), pr.get("r", 0), pr.get("m", 0), pr.get("n", 0), pr["e"])

    def to_json_obj(self) -> dict:
        def res(x):
            return None if x is None else x.value

        return {
            "check": self.check.value,
            "params": self.params,
            "status": self.status.value,
            "modulus": f"{self.params['p']}^{self.params['e']}",
            "lhs_residue": res(self.lhs_residue),
            "rhs_residue": res(self.rhs_residue),
            "witness": self.witness,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


# --- exact values carried as unreduced num/den pairs ------------------------------


@dataclass(frozen=True)
class _Q:
    """num/den without a gcd; huge 16^n denominators make Fraction normalisation costly."""

    num: int
    den: int = 1

    def exact(self) -> Fraction:
        return Fraction(self.num, self.den)


def _as_q(x) -> _Q:
    if isinstance(x, _Q):
        return x
    x = Fraction(x)
    return _Q(x.numerator, x.denominator)


def _side_residue(terms, p: int, e: int) -> int:
    mod = p**e
    acc = 0
    for c, v in terms:
        c, v = Fraction(c), _as_q(v)
        acc += residue_of(c.numerator * v.num, c.denominator * v.den, p, e)
    return acc % mod


def _side_exact(terms) -> Fraction:
    return sum((Fraction(c) * _as_q(v).exact() for c, v in terms), Fraction(0))


def _compare(check: CheckId, params: dict, lhs_terms, rhs_terms, note: str = "") -> CongruenceReport:
    """LHS = sum c*v over lhs_terms, likewise RHS; test LHS == RHS mod p^e."""
    p, e = params["p"], params["e"]
    try:
        lres = _side_residue(lhs_terms, p, e)
        rres = _side_residue(rhs_terms, p, e)
    except NotPIntegral:
        # a single term may fail to be p-integral while the difference is fine
        diff = _side_exact(lhs_terms) - _side_exact(rhs_terms)
        if diff.denominator % p == 0:
            return CongruenceReport(check, params, Status.NOT_P_INTEGRAL, note=note)
        ok = residue_of(diff.numerator, diff.denominator, p, e) == 0
        status = Status.HOLDS if ok else Status.FAILS
        return CongruenceReport(
            check, params, status, witness=None if ok else dict(params),
            note=(note + "; " if note else "") + "sides not separately p-integral",
        )
    lhs = ResidueClass(lres, p, e)
    rhs = ResidueClass(rres, p, e)
    if lres == rres:
        return CongruenceReport(check, params, Status.HOLDS, lhs, rhs, note=note)
    return CongruenceReport(check, params, Status.FAILS, lhs, rhs, witness=dict(params), note=note)


# --- parameter grids ---------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    p_max: int = 31
    r_max: int = 2
    m_max: int = 3
    k_set: tuple = (2, 3)
    n_max: int = 2000
    strong_r_max: int | None = None  # r range for the p^{3r} / p^{2r} strengthenings
    p_min: int = 3

    def __post_init__(self):
        for name in ("p_max", "r_max", "m_max", "n_max"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.strong_r_max is not None and self.strong_r_max < 0:
            raise ValueError("strong_r_max must be >= 0")

    @property
    def primes(self) -> list[int]:
        return [p for p in odd_primes_up_to(self.p_max) if p >= self.p_min]

    @property
    def strong_r(self) -> int:
        return self.r_max if self.strong_r_max is None else self.strong_r_max


def _asd_index(m: int, p: int, j: int) -> int | None:
    """(m p^j - 1)/2 when it is a non-negative integer, else None (j may be negative)."""
    if j >= 0:
        num = m * p**j - 1
    else:
        if m % p ** (-j):
            return None
        num = m // p ** (-j) - 1
    if num < 0 or num % 2:
        return None
    return num // 2


def _eta_table(which: EtaKind, primes: Sequence[int]):
    return eta_coeffs(which, max(primes)) if primes else None


# --- individual checks ---------------------------------------------------------------


def _pary(check: CheckId, cfg: SweepConfig, values: dict) -> list[CongruenceReport]:
    out = []
    for p in cfg.primes:
        for n in range(cfg.n_max + 1):
            digits = p_ary_digits(n, p)
            prod = Fraction(1)
            for d in digits:
                prod *= values[d].exact()
            params = {"p": p, "n": n, "e": 1}
            out.append(_compare(check, params, [(1, values[n])], [(1, prod)]))
    return out


def _a_table(family: ApFamily, indices: Iterable[int]) -> dict[int, _Q]:
    return {n: _Q(int(v)) for n, v in apery_values_at(family, indices).items()}


def _tj2_table(indices: Iterable[int]) -> dict[int, _Q]:
    return {n: _Q(u, 16**n) for n, u in tj2_scaled_values_at(indices).items()}


def _beukers(check: CheckId, cfg: SweepConfig) -> list[CongruenceReport]:
    family = ApFamily.A2 if check is CheckId.BEUKERS_A2 else ApFamily.A3
    grid = []
    for p in cfg.primes:
        for r in range(1, cfg.r_max + 1):
            for m in range(1, cfg.m_max + 1):
                grid.append((p, r, m, r))
                if p >= 5 and r <= cfg.strong_r:
                    grid.append((p, r, m, 3 * r))
    need = {m * p**r - 1 for p, r, m, _ in grid} | {m * p ** (r - 1) - 1 for p, r, m, _ in grid}
    vals = _a_table(family, need)
    out = []
    for p, r, m, e in grid:
        params = {"p": p, "r": r, "m": m, "e": e}
        note = "supercongruence" if e != r else ""
        out.append(_compare(check, params, [(1, vals[m * p**r - 1])],
                            [(1, vals[m * p ** (r - 1) - 1])], note))
    return out


def _asd_grid(cfg: SweepConfig, strong_factor: int | None):
    grid = []
    for p in cfg.primes:
        for r in range(1, cfg.r_max + 1):
            for m in range(1, cfg.m_max + 1, 2):
                grid.append((p, r, m, r))
                if strong_factor and p >= 5 and r <= cfg.strong_r:
                    grid.append((p, r, m, strong_factor * r))
    return grid


def _asd(check: CheckId, cfg: SweepConfig, values_for, coeff, low_weight, strong_factor=None):
    """X((mp^r-1)/2) - coeff(p) X((mp^{r-1}-1)/2) + low_weight(p) X((mp^{r-2}-1)/2) = 0 mod p^e."""
    grid = _asd_grid(cfg, strong_factor)
    need = set()
    for p, r, m, _ in grid:
        for j in (r, r - 1, r - 2):
            idx = _asd_index(m, p, j)
            if idx is not None:
                need.add(idx)
    vals = values_for(need)
    out = []
    for p, r, m, e in grid:
        terms = []
        weights = (1, -coeff(p), low_weight(p))
        absent = []
        for j, w in zip((r, r - 1, r - 2), weights):
            idx = _asd_index(m, p, j)
            if idx is None:
                absent.append(j)
            else:
                terms.append((w, vals[idx]))
        note = ("index (m p^%d - 1)/2 not integral, term read as 0" % absent[0]) if absent else ""
        if e != r:
            note = "strengthened modulus" + ("; " + note if note else "")
        params = {"p": p, "r": r, "m": m, "e": e}
        out.append(_compare(check, params, terms, [], note))
    return out


def _scale_tj2(cfg: SweepConfig) -> list[CongruenceReport]:
    grid = [(p, r, m) for p in cfg.primes for r in range(1, cfg.r_max + 1) for m in range(1, cfg.m_max + 1)]
    vals = _tj2_table({m * p**r for p, r, m in grid} | {m * p ** (r - 1) for p, r, m in grid})
    return [
        _compare(CheckId.SCALE_TJ2, {"p": p, "r": r, "m": m, "e": r},
                 [(1, vals[m * p**r])], [(1, vals[m * p ** (r - 1)])])
        for p, r, m in grid
    ]


def _scale_tj3(cfg: SweepConfig) -> list[CongruenceReport]:
    primes = cfg.primes
    if not primes:
        return []
    table = tj_rec_values(3, max(p**cfg.r_max for p in primes))
    out = []
    for p in primes:
        for r in range(1, cfg.r_max + 1):
            lhs = table[p**r] * p ** (3 * r)
            rhs = table[p ** (r - 1)] * p ** (3 * (r - 1))
            out.append(_compare(CheckId.SCALE_TJ3, {"p": p, "r": r, "e": r}, [(1, lhs)], [(1, rhs)]))
    return out


def _central_sq_16(n: int) -> Fraction:
    return Fraction(binomial(2 * n, n) ** 2, 16**n)


def _single_prime_checks(check: CheckId, cfg: SweepConfig) -> list[CongruenceReport]:
    primes = cfg.primes
    if check is CheckId.SUPER_A2_LAMBDA:
        primes = [p for p in primes if p > 3]
    if not primes:
        return []
    top = max(primes)
    out = []
    if check in (CheckId.SUM_TJ2, CheckId.CONJ_SUMSQ, CheckId.HALF_TJ2_A2):
        tj2 = tj_rec_values(2, top)
    if check in (CheckId.HALF_TJ2_A2, CheckId.SUPER_A2_LAMBDA):
        a2 = _a_table(ApFamily.A2, {(p - 1) // 2 for p in primes})
    if check is CheckId.SUPER_A2_LAMBDA:
        lam = eta_coeffs(EtaKind.LAMBDA, top)
    for p in primes:
        chi = legendre_minus_one(p)
        h = (p - 1) // 2
        if check is CheckId.SUM_TJ2:
            rep = _compare(check, {"p": p, "e": 2}, [(1, sum(tj2[:p], Fraction(0)))], [])
        elif check is CheckId.HALF_TJ2_A2:
            rep = _compare(check, {"p": p, "e": 2}, [(1, tj2[h])], [(1, a2[h])])
        elif check is CheckId.SUPER_A2_LAMBDA:
            rep = _compare(check, {"p": p, "e": 2}, [(1, a2[h])], [(1, lam[p])])
        elif check is CheckId.MORTENSON:
            lhs = sum((_central_sq_16(n) for n in range(p)), Fraction(0))
            rep = _compare(check, {"p": p, "e": 2}, [(1, lhs)], [(1, chi)])
        elif check is CheckId.OS_HALF:
            first = sum((_central_sq_16(n) for n in range(h + 1)), Fraction(0))
            inner = sum((Fraction(binomial(2 * i, i), i) for i in range(1, h + 1)), Fraction(0))
            lhs = first + Fraction(3, 8) * p * (-1) ** h * inner
            rep = _compare(check, {"p": p, "e": 3}, [(1, lhs)], [(1, chi)])
        elif check is CheckId.CONJ_SUMSQ:
            lhs = sum((v * v for v in tj2[:p]), Fraction(0))
            rep = _compare(check, {"p": p, "e": 3}, [(1, lhs)], [(1, chi)])
        else:  # pragma: no cover
            raise ValueError(check)
        out.append(rep)
    return out


def _conj_ko(cfg: SweepConfig) -> list[CongruenceReport]:
    grid = [(p, r, m) for p in cfg.primes for r in range(1, cfg.r_max + 1) for m in range(1, cfg.m_max + 1)]
    vals = _tj2_table({m * p**r - 1 for p, r, m in grid} | {m * p ** (r - 1) - 1 for p, r, m in grid})
    return [
        _compare(CheckId.CONJ_KO, {"p": p, "r": r, "m": m, "e": r},
                 [(1, vals[m * p**r - 1])], [(legendre_minus_one(p), vals[m * p ** (r - 1) - 1])])
        for p, r, m in grid
    ]


def _conj_sum_tj2k(cfg: SweepConfig) -> list[CongruenceReport]:
    primes = cfg.primes
    out = []
    for k in sorted(set(cfg.k_set)):
        if k < 1:
            raise ValueError("k must be >= 1")
        if not primes:
            continue
        table = tj_rec_values(2 * k, max(primes))
        for p in primes:
            lhs = sum(table[:p], Fraction(0))
            out.append(_compare(CheckId.CONJ_SUM_TJ2K, {"p": p, "k": k, "e": 2}, [(1, lhs)], [(-1, 1)]))
    return out


def run_check(
    check: CheckId | str,
    p_max: int = 31,
    r_max: int = 2,
    m_max: int = 3,
    k_set: Iterable[int] = (2, 3),
    n_max: int = 2000,
    strong_r_max: int | None = None,
    p_min: int = 3,
) -> list[CongruenceReport]:
    """Evaluate one registry entry over its full grid, in canonical order.

    ``strong_r_max`` bounds r for the extra p^{3r} (Beukers) and p^{2r}
    (CONJ_ASD_TJ2) reports made for p >= 5; by default it equals ``r_max``.
    """
    check = CheckId.parse(check) if isinstance(check, str) else CheckId(check)
    cfg = SweepConfig(p_max, r_max, m_max, tuple(k_set), n_max, strong_r_max, p_min)
    if check in (CheckId.PARY_A2, CheckId.PARY_A3):
        fam = ApFamily.A2 if check is CheckId.PARY_A2 else ApFamily.A3
        reports = _pary(check, cfg, _a_table(fam, range(cfg.n_max + 1)))
    elif check is CheckId.PARY_TJ2:
        reports = _pary(check, cfg, _tj2_table(range(cfg.n_max + 1)))
    elif check in (CheckId.BEUKERS_A2, CheckId.BEUKERS_A3):
        reports = _beukers(check, cfg)
    elif check in (CheckId.ASD_A2, CheckId.ASD_A3, CheckId.CONJ_ASD_TJ2):
        primes = cfg.primes
        if check is CheckId.ASD_A3:
            eta = _eta_table(EtaKind.GAMMA, primes)
            values_for = lambda idx: _a_table(ApFamily.A3, idx)  # noqa: E731
            low = lambda p: p**3  # noqa: E731
            strong = None
        elif check is CheckId.ASD_A2:
            eta = _eta_table(EtaKind.LAMBDA, primes)
            values_for = lambda idx: _a_table(ApFamily.A2, idx)  # noqa: E731
            low = lambda p: (-1) ** ((p - 1) // 2) * p**2  # noqa: E731
            strong = None
        else:
            eta = _eta_table(EtaKind.LAMBDA, primes)
            values_for = _tj2_table
            low = lambda p: (-1) ** (p * (p - 1) // 2) * p**2  # noqa: E731
            strong = 2
        reports = _asd(check, cfg, values_for, lambda p: eta[p], low, strong)
    elif check is CheckId.SCALE_TJ2:
        reports = _scale_tj2(cfg)
    elif check is CheckId.SCALE_TJ3:
        reports = _scale_tj3(cfg)
    elif check is CheckId.CONJ_KO:
        reports = _conj_ko(cfg)
    elif check is CheckId.CONJ_SUM_TJ2K:
        reports = _conj_sum_tj2k(cfg)
    else:
        reports = _single_prime_checks(check, cfg)
    return sorted(reports, key=CongruenceReport.sort_key)


def _run_one(args):
    check, kwargs = args
    return run_check(check, **kwargs)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("APERY_LAB_JOBS", "1")))
    except ValueError:
        return 1


def run_checks(checks: Sequence[CheckId], jobs: int | None = None, **kwargs) -> list[CongruenceReport]:
    """Run several checks, optionally in worker processes; output order is canonical."""
    checks = [CheckId.parse(c) if isinstance(c, str) else CheckId(c) for c in checks]
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(checks) <= 1:
        results = [run_check(c, **kwargs) for c in checks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, [(c, kwargs) for c in checks]))
    merged = [rep for chunk in results for rep in chunk]
    return sorted(merged, key=CongruenceReport.sort_key)


@dataclass
class Summary:
    check: CheckId
    grid_size: int = 0
    holds: int = 0
    fails: int = 0
    not_p_integral: int = 0
    witnesses: list = field(default_factory=list)


def summarize(reports: Iterable[CongruenceReport]) -> list[Summary]:
    by_check: dict[CheckId, Summary] = {}
    for rep in reports:
        s = by_check.setdefault(rep.check, Summary(rep.check))
        s.grid_size += 1
        if rep.status is Status.HOLDS:
            s.holds += 1
        elif rep.status is Status.FAILS:
            s.fails += 1
            s.witnesses.append(rep.witness)
        else:
            s.not_p_integral += 1
    order = list(CheckId)
    return sorted(by_check.values(), key=lambda s: order.index(s.check))


def summary_csv(reports: Iterable[CongruenceReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "grid_size", "holds", "fails", "not_p_integral"])
    for s in summarize(reports):
        w.writerow([s.check.value, s.grid_size, s.holds, s.fails, s.not_p_integral])
    return buf.getvalue()


def reports_jsonl(reports: Iterable[CongruenceReport]) -> str:
    return "".join(rep.to_json() + "\n" for rep in reports)
