from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apery_lab.apery_like import jk_table
from apery_lab.normalized import (
    RationalSeq,
    SRoute,
    ascent,
    ascent_recurrence_check,
    decompose,
    epsilon,
    s_limit_check,
    s_table,
    tj,
    tj1_value,
    tj2_scaled_values_at,
    tj_from_s,
    tj_rec_values,
)


def test_small_values():
    assert tj(2, 2).values == (1, Fraction(3, 4), Fraction(41, 64))
    assert tj(3, 1)[1] == Fraction(1, 2)
    assert tj1_value(2) == Fraction(4, 3)  # 2^2 * 1!/3!!
    with pytest.raises(IndexError):
        tj(1, 2)[0]


@pytest.mark.parametrize("k", range(1, 6))
def test_value_at_one(k):
    assert tj(2 * k, 1)[1] == Fraction(3, 4**k)
    assert tj(2 * k + 1, 1)[1] == Fraction(2, 4**k)


def test_rational_seq_rejects_wrong_seed():
    with pytest.raises(ValueError):
        RationalSeq(4, (Fraction(0), Fraction(1)))


def test_ascent_lemma():
    for k in (1, 2, 3, 4):
        assert ascent_recurrence_check(tj(k, 25).values if k > 1 else (lambda n: tj1_value(n)), 25)
    assert ascent(tj(2, 5), 0) == 0


@given(st.lists(st.fractions(max_denominator=9), min_size=8, max_size=8))
def test_ascent_lemma_on_arbitrary_sequences(vals):
    seq = [Fraction(0)] + vals
    assert ascent_recurrence_check(seq, len(vals))


def test_fast_providers_agree():
    for k in range(1, 9):
        assert tj_rec_values(k, 30)[1:] == tj(k, 30).values[1:]
    scaled = tj2_scaled_values_at(range(31))
    assert all(Fraction(scaled[n], 16**n) == tj(2, 30)[n] for n in range(31))


def test_decomposition_small():
    tables = {k: tj(k, 20) for k in range(1, 9)}
    for k in range(2, 9):
        for n in range(21):
            assert decompose(k, n, tables) == jk_table(k, 20)[n]


@pytest.mark.parametrize("k", range(4, 9))
def test_s_routes_agree(k):
    a = s_table(k, 12, SRoute.DEFINITION)
    assert a == s_table(k, 12, SRoute.RECURSION) == s_table(k, 12, SRoute.MULTISUM)
    assert all(tj_from_s(k, n, a) == tj(k, 12)[n] for n in range(13))


def test_s_small_k():
    assert s_table(3, 5, "definition") == s_table(3, 5, "recursion")
    with pytest.raises(ValueError):
        s_table(3, 5, "multisum")


def test_epsilon():
    assert epsilon([1, 2, 2, 3]) == 1
    assert epsilon([1, 1, 2]) == 0
    assert epsilon([]) == 1
    with pytest.raises(ValueError):
        epsilon([3, 2])


def test_s_limits():
    assert s_limit_check(1, 500, 1e-2)
    assert s_limit_check(2, 500, 1e-3)
