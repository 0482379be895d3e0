from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from apery_lab.zeta_ring import (
    UNIT,
    ZERO,
    ZetaCombination,
    hurwitz_half,
    riemann_basis,
    riemann_zeta,
    zc_eval,
)

fracs = st.fractions(min_value=-100, max_value=100, max_denominator=50)
combos = st.dictionaries(st.sampled_from([UNIT, 2, 3, 4, 5]), fracs, max_size=4).map(ZetaCombination)


def test_hurwitz_symbol():
    assert hurwitz_half(3) == 3
    with pytest.raises(ValueError):
        hurwitz_half(1)


def test_riemann_view():
    a = ZetaCombination.hurwitz(4, 1)
    assert riemann_basis(a) == ({4: Fraction(15)}, 0)
    b = ZetaCombination.from_riemann({4: Fraction(45, 4), 2: Fraction(9, 16)})
    assert b.display() == "45/4*zeta(4) + 9/16*zeta(2)"
    assert (ZetaCombination.hurwitz(3, Fraction(3, 4)) + Fraction(1, 2)).display() == "21/4*zeta(3) + 1/2"
    assert ZetaCombination.hurwitz(2, -1).display("hurwitz") == "-zeta(2,1/2)"
    assert ZERO.display() == "0"


@given(combos, combos, combos)
def test_module_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == ZERO
    assert (a + b) * 3 == a * 3 + b * 3
    assert a * Fraction(2, 3) / Fraction(2, 3) == a


@given(combos)
def test_json_roundtrip(a):
    assert ZetaCombination.from_json_obj(a.to_json_obj()) == a
    assert hash(ZetaCombination(a.terms)) == hash(a)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 7, 10])
def test_riemann_zeta_matches_mpmath(m):
    with mpmath.workdps(50):
        ref = mpmath.zeta(m)
        assert abs(riemann_zeta(m, 1e-30) - ref) < mpmath.mpf("1e-30")


def test_zc_eval():
    a = ZetaCombination.from_riemann({2: 1}, unit=Fraction(1, 2))
    with mpmath.workdps(30):
        assert abs(zc_eval(a, 1e-20) - (mpmath.pi**2 / 6 + mpmath.mpf(1) / 2)) < 1e-20
    with pytest.raises(ValueError):
        zc_eval(a, 0)
