import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apery_lab.apery_like import (
    ZetaQParams,
    closed_form_table,
    g_closed,
    g_partial_sums,
    j1_table,
    j1_value,
    j2,
    j3,
    jk_initial,
    jk_recurrence,
    jk_series_numeric,
    jk_table,
    jk_theorem71,
    series_tail_bound,
    series_truncation,
    theorem71_table,
    zeta_q,
    zeta_q_detail,
)
from apery_lab.zeta_ring import ZetaCombination, zc_eval

R = ZetaCombination.from_riemann

J4_REFERENCE = [
    R({4: 15}),
    R({4: Fraction(45, 4), 2: Fraction(9, 16)}),
    R({4: Fraction(615, 64), 2: Fraction(807, 1024)}),
    R({4: Fraction(2205, 256), 2: Fraction(3745, 4096)}),
    R({4: Fraction(129735, 16384), 2: Fraction(1044135, 1048576)}),
]
J2_REFERENCE = [
    R({2: 3}),
    R({2: Fraction(9, 4)}),
    R({2: Fraction(123, 64)}),
    R({2: Fraction(441, 256)}),
    R({2: Fraction(25947, 16384)}),
]


def test_reference_values():
    assert jk_table(2, 1).values == (R({2: 3}), R({2: Fraction(9, 4)}))
    assert jk_table(3, 1).values == (R({3: 7}), R({3: Fraction(21, 4)}, Fraction(1, 2)))
    assert list(jk_table(4, 4).values) == J4_REFERENCE
    assert list(jk_table(2, 4).values) == J2_REFERENCE
    assert jk_table(4, 1)[1].display() == "45/4*zeta(4) + 9/16*zeta(2)"


def test_j5_one():
    assert jk_table(5, 1)[1] == R({5: Fraction(93, 4), 3: Fraction(21, 16)}, Fraction(1, 8))


def test_j1_convention():
    assert j1_value(1) == 2 and j1_value(2) == Fraction(4 * 1, 3)
    with pytest.raises(IndexError):
        j1_table(3)[0]
    with pytest.raises(ValueError):
        j1_value(0)


def test_initial_conditions_general():
    for k in range(2, 13):
        j0, j1 = jk_initial(k)
        assert j0 == ZetaCombination.hurwitz(k)
        lower = jk_table(k - 2, 1)[1] if k >= 3 else ZetaCombination()
        assert j1 * 4 - j0 * 3 == lower


@pytest.mark.parametrize("k", [2, 3])
def test_closed_forms_match_recurrence(k):
    assert closed_form_table(k, 40).values == jk_recurrence(k, 40).values
    if k == 2:
        assert [j2(n) for n in range(5)] == J2_REFERENCE
    else:
        assert j3(0) == R({3: 7})


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_theorem71_matches_recurrence(k):
    assert theorem71_table(k, 40).values == jk_recurrence(k, 40).values


def test_theorem71_single_value_and_errors():
    lower = jk_table(2, 6)
    assert jk_theorem71(4, 6, lower) == jk_table(4, 6)[6]
    with pytest.raises(ValueError):
        jk_theorem71(4, 6, jk_table(3, 6))
    with pytest.raises(ValueError):
        theorem71_table(2, 5)


def test_series_oracle_small_grid():
    for k, n in [(2, 0), (2, 3), (3, 2), (4, 1), (5, 4)]:
        L = series_truncation(k, n, 5e-7)
        assert series_tail_bound(k, n, L) < 5e-7
        approx = jk_series_numeric(k, n, L)
        assert abs(approx - float(zc_eval(jk_table(k, n)[n], 1e-12))) < 1e-6


@given(st.integers(2, 6), st.integers(0, 8), st.integers(1, 2000))
def test_tail_bound_decreases_in_L(k, n, L):
    assert series_tail_bound(k, n, L + 1) <= series_tail_bound(k, n, L)


# --- zeta_Q ------------------------------------------------------------------------------


def test_zeta_q_rejects_divergent_parameters():
    with pytest.raises(ValueError, match="alpha\\*beta > 2"):
        ZetaQParams(1, 1)
    with pytest.raises(ValueError):
        ZetaQParams(-1, 5)


@pytest.mark.parametrize("s", [2, 3])
def test_zeta_q_degenerate_case(s):
    from apery_lab.zeta_ring import hurwitz_half_value

    a = 2.0
    scale = 2 * a / (2 * math.sqrt(a * a * (a * a - 1)))
    expected = 2 * scale**s * float(hurwitz_half_value(s, 1e-17))
    assert zeta_q(s, ZetaQParams(a, a)) == pytest.approx(expected, rel=1e-14)
    if s == 2:
        assert expected == pytest.approx(2 * (4 / (2 * math.sqrt(12))) ** 2 * math.pi**2 / 2, rel=1e-14)


@given(st.floats(1.5, 6), st.floats(1.5, 6), st.sampled_from([2, 3]))
def test_zeta_q_symmetry_and_routes(a, b, s):
    if a * b <= 2.2:
        return
    r1 = zeta_q_detail(s, ZetaQParams(a, b), 1e-10)
    r2 = zeta_q_detail(s, ZetaQParams(b, a), 1e-10)
    assert r1.value == pytest.approx(r2.value, rel=1e-12)
    assert abs(r1.g_exact - r1.g_closed) < 1e-8


def test_g_truncation_converges_monotonically():
    x = 1 / (3 * 1.0 - 1)  # alpha = 3, beta = 1
    for s in (2, 3):
        limit = g_closed(s, x, 1e-13)
        errs = [abs(v - limit) for v in g_partial_sums(s, x, [4, 8, 16, 32, 48])]
        assert all(e2 <= e1 for e1, e2 in zip(errs, errs[1:]))
        j0 = float(zc_eval(jk_table(s, 0)[0], 1e-15))
        for N, e in zip([4, 8, 16, 32, 48], errs):
            assert e <= j0 * x ** (N + 1) / (1 - x) + 1e-13
