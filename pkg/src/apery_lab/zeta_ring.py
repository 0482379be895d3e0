"""Rational linear combinations of Hurwitz zeta values zeta(m, 1/2) plus a rational constant.

The canonical basis is ``{zeta(m, 1/2) : m >= 2} U {1}``.  A basis symbol is
encoded as an int: ``UNIT == 0`` for the constant term and ``m >= 2`` for
``zeta(m, 1/2)``.  The Riemann-basis view uses ``zeta(m, 1/2) = (2^m - 1) zeta(m)``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Mapping

import mpmath

UNIT = 0


def hurwitz_half(m: int) -> int:
    """Basis symbol for zeta(m, 1/2); m >= 2 (zeta(1, .) diverges)."""
    if m < 2:
        raise ValueError(f"zeta(m, 1/2) requires m >= 2, got {m}")
    return m


def _check_symbol(sym: int) -> None:
    if sym != UNIT and sym < 2:
        raise ValueError(f"invalid zeta symbol {sym!r}")


class ZetaCombination:
    """Immutable map symbol -> nonzero Fraction; absent symbols have coefficient 0."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None):
        clean = {}
        if terms:
            for sym, c in terms.items():
                _check_symbol(sym)
                c = Fraction(c)
                if c:
                    clean[sym] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> ZetaCombination:
        # terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def unit(cls, c) -> ZetaCombination:
        return cls({UNIT: c})

    @classmethod
    def hurwitz(cls, m: int, c=1) -> ZetaCombination:
        return cls({hurwitz_half(m): c})

    @classmethod
    def from_riemann(cls, coeffs: Mapping[int, Fraction | int], unit=0) -> ZetaCombination:
        """Build from coefficients on zeta(m) (Riemann basis) plus a unit term."""
        terms = {hurwitz_half(m): Fraction(c) / (2**m - 1) for m, c in coeffs.items()}
        terms[UNIT] = Fraction(unit)
        return cls(terms)

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coeff(self, sym: int) -> Fraction:
        return self._terms.get(sym, Fraction(0))

    @property
    def unit_part(self) -> Fraction:
        return self._terms.get(UNIT, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ZetaCombination.unit(other)
        if not isinstance(other, ZetaCombination):
            return NotImplemented
        out = dict(self._terms)
        for sym, c in other._terms.items():
            s = out.get(sym, 0) + c
            if s:
                out[sym] = s
            else:
                out.pop(sym, None)
        return ZetaCombination._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ZetaCombination._raw({s: -c for s, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ZetaCombination.unit(other)
        if not isinstance(other, ZetaCombination):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        if not c:
            return ZetaCombination._raw({})
        return ZetaCombination._raw({s: v * c for s, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(c))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ZetaCombination.unit(other)
        if not isinstance(other, ZetaCombination):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"ZetaCombination({self.display()})"

    def display(self, basis: str = "riemann") -> str:
        """Human-readable form, e.g. ``45/4*zeta(4) + 9/16*zeta(2)``."""
        if not self._terms:
            return "0"
        if basis == "riemann":
            rb, unit = riemann_basis(self)
            items = [(c, f"zeta({m})") for m, c in sorted(rb.items(), reverse=True)]
        else:
            unit = self.unit_part
            items = [
                (c, f"zeta({m},1/2)")
                for m, c in sorted(self._terms.items(), reverse=True)
                if m != UNIT
            ]
        if unit:
            items.append((unit, None))
        parts = []
        for c, name in items:
            mag = abs(c)
            body = str(mag) if name is None else (name if mag == 1 else f"{mag}*{name}")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json_obj(self) -> dict:
        return {
            "unit": _frac_str(self.unit_part),
            "hurwitz_half": {
                str(m): _frac_str(c) for m, c in sorted(self._terms.items()) if m != UNIT
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=False)

    @classmethod
    def from_json_obj(cls, obj: dict) -> ZetaCombination:
        terms = {UNIT: Fraction(obj.get("unit", "0"))}
        for m, c in obj.get("hurwitz_half", {}).items():
            terms[hurwitz_half(int(m))] = Fraction(c)
        return cls(terms)

    def evaluate(self, tol: float = 1e-15):
        return zc_eval(self, tol)


ZERO = ZetaCombination()


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def zc_add(a: ZetaCombination, b: ZetaCombination) -> ZetaCombination:
    return a + b


def zc_scale(c, a: ZetaCombination) -> ZetaCombination:
    return a * Fraction(c)


def riemann_basis(a: ZetaCombination) -> tuple[dict[int, Fraction], Fraction]:
    """Coefficients on zeta(m) (keyed by m) and the unit term."""
    coeffs = {m: c * (2**m - 1) for m, c in a._terms.items() if m != UNIT}
    return coeffs, a.unit_part


def from_riemann_basis(coeffs: Mapping[int, Fraction], unit=0) -> ZetaCombination:
    return ZetaCombination.from_riemann(coeffs, unit)


# --- numeric evaluation ---------------------------------------------------


def _zeta_tail_terms(m: int, N: int, tol, max_terms: int = 200):
    """Euler-Maclaurin tail sum_{n >= N} n^-m and a bound on its truncation error."""
    N = mpmath.mpf(N)
    tail = N ** (1 - m) / (m - 1) + N ** (-m) / 2
    rising = mpmath.mpf(m)  # (m)_{2j-1}
    for j in range(1, max_terms):
        term = mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * rising * N ** (-m - 2 * j + 1)
        # for real m > 1 the remainder after j-1 correction terms is bounded by |term_j|
        if abs(term) < tol:
            return tail, abs(term)
        tail += term
        rising *= (m + 2 * j - 1) * (m + 2 * j)
    raise ArithmeticError("Euler-Maclaurin tail failed to reach the requested tolerance")


def riemann_zeta(m: int, tol: float = 1e-15):
    """zeta(m) for integer m >= 2 with absolute error < tol, as an ``mpmath.mpf``.

    Direct summation of the first N-1 terms plus an Euler-Maclaurin tail whose
    truncation error is bounded by the first omitted correction term.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if tol <= 0:
        raise ValueError("tol must be positive")
    digits = max(20, int(-math.log10(tol)) + 15)
    with mpmath.workdps(digits):
        # the asymptotic tail bottoms out near exp(-2 pi N), so N grows with log(1/tol)
        N = 10 + int(-math.log(tol) / (2 * math.pi)) + 1
        head = mpmath.fsum(mpmath.mpf(n) ** (-m) for n in range(1, N))
        tail, err = _zeta_tail_terms(m, N, mpmath.mpf(tol) / 2)
        assert err < tol
        return +(head + tail)


def hurwitz_half_value(m: int, tol: float = 1e-15):
    """zeta(m, 1/2) = (2^m - 1) zeta(m)."""
    factor = 2**m - 1
    return factor * riemann_zeta(m, tol / factor)


def zc_eval(a: ZetaCombination, tol: float = 1e-15):
    """Numeric value of ``a`` with total absolute error < tol (an ``mpmath.mpf``)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    hurw = [(m, c) for m, c in a._terms.items() if m != UNIT]
    weight = sum(abs(c) for _, c in hurw) or 1
    digits = max(20, int(-math.log10(tol)) + 15)
    with mpmath.workdps(digits):
        total = mpmath.mpf(a.unit_part.numerator) / a.unit_part.denominator
        for m, c in hurw:
            val = hurwitz_half_value(m, tol / (2 * float(weight)))
            total += mpmath.mpf(c.numerator) / c.denominator * val
        return +total
