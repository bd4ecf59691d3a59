from __future__ import annotations

from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hssmap.errors import ArgumentError
from hssmap.octonions import (
    ONE,
    ZERO,
    JordanElem,
    Oct,
    jordan_adj,
    jordan_det,
    jordan_product,
    jordan_rank,
    oct_conj,
    oct_mul,
    oct_norm,
    oct_pair,
    op2_chart,
)

coef = st.integers(-3, 3)
octs = st.lists(coef, min_size=8, max_size=8).map(Oct.from_coords)
jordans = st.tuples(st.tuples(coef, coef, coef), octs, octs, octs).map(lambda t: JordanElem(*t))


@settings(max_examples=200, deadline=None)
@given(octs, octs)
def test_norm_multiplicative(x, y):
    assert oct_norm(oct_mul(x, y)) == oct_norm(x) * oct_norm(y)


@settings(max_examples=100, deadline=None)
@given(octs, octs)
def test_conjugation_and_alternativity(x, y):
    assert oct_conj(oct_conj(x)) == x
    assert oct_conj(oct_mul(x, y)) == oct_mul(oct_conj(y), oct_conj(x))
    assert oct_mul(x, oct_conj(x)) == Oct.scalar(oct_norm(x))
    assert oct_mul(oct_mul(x, x), y) == oct_mul(x, oct_mul(x, y))
    assert oct_mul(oct_mul(y, x), x) == oct_mul(y, oct_mul(x, x))
    assert oct_pair(x, y) == oct_norm(x + y) - oct_norm(x) - oct_norm(y)


def test_split_octonions_are_not_associative():
    e = [Oct.from_coords([1 if i == k else 0 for i in range(8)]) for k in range(8)]
    assert any(
        oct_mul(oct_mul(a, b), c) != oct_mul(a, oct_mul(b, c)) for a in e for b in e for c in e
    )


@settings(max_examples=30, deadline=None)
@given(octs)
def test_unit(x):
    assert oct_mul(ONE, x) == x == oct_mul(x, ONE)
    assert oct_mul(ZERO, x).is_zero()


def test_det_examples():
    assert jordan_det(JordanElem.identity()) == 1
    assert jordan_det(JordanElem.diag(2, Q(1, 3), -5)) == Q(-10, 3)
    assert jordan_det(op2_chart(Oct(1, 2, (0, 1, 0), (3, 0, 0)), ONE)) == 0


def test_adj_examples():
    assert jordan_adj(JordanElem.diag(2, 3, 5)) == JordanElem.diag(15, 10, 6)
    assert jordan_adj(JordanElem.identity()) == JordanElem.identity()
    assert jordan_adj(JordanElem.diag(1, 0, 0)).is_zero()


def test_rank_examples():
    assert jordan_rank(JordanElem()) == 0
    assert jordan_rank(JordanElem.diag(1, 0, 0)) == 1
    assert jordan_rank(JordanElem.diag(1, 1, 0)) == 2
    assert jordan_adj(JordanElem.diag(1, 1, 0)) == JordanElem.diag(0, 0, 1)
    assert jordan_rank(JordanElem.identity()) == 3


def test_chart_examples():
    assert op2_chart(ZERO, ZERO) == JordanElem.diag(1, 0, 0)
    m = op2_chart(ONE, ZERO)
    assert m == JordanElem((1, 1, 0), ONE, ZERO, ZERO)
    assert jordan_adj(m).is_zero()


@settings(max_examples=200, deadline=None)
@given(jordans)
def test_freudenthal_identity(m):
    assert jordan_adj(jordan_adj(m)) == m.scale(jordan_det(m))


@settings(max_examples=60, deadline=None)
@given(jordans)
def test_jordan_product_with_adjugate(m):
    assert jordan_product(m, jordan_adj(m)) == JordanElem.identity().scale(jordan_det(m))


@settings(max_examples=100, deadline=None)
@given(octs, octs)
def test_chart_has_rank_one(u, w):
    m = op2_chart(u, w)
    assert jordan_rank(m) == 1


@settings(max_examples=60, deadline=None)
@given(octs, octs, octs, octs, st.integers(1, 3))
def test_rank_two_adjugate_has_rank_one(u1, w1, u2, w2, s):
    m = op2_chart(u1, w1) + op2_chart(u2, w2).scale(s)
    if jordan_det(m) == 0 and not jordan_adj(m).is_zero():
        assert jordan_rank(jordan_adj(m)) == 1


@settings(max_examples=100, deadline=None)
@given(jordans, jordans)
def test_rank_subadditive(a, b):
    assert jordan_rank(a + b) <= jordan_rank(a) + jordan_rank(b)


def test_json_roundtrip_and_errors():
    m = JordanElem((1, Q(1, 2), 0), Oct(1, 2, (3, 4, 5), (6, 7, 8)), ONE, ZERO)
    assert JordanElem.from_json(m.to_json()) == m
    assert JordanElem.from_coords(m.coords()) == m
    with pytest.raises(ArgumentError):
        Oct.from_json({"a": "1"})
    with pytest.raises(ArgumentError):
        Oct.from_coords([1, 2])
