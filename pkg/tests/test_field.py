import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropfew.field import LaurentPoly, PuiseuxScalar, is_positive, ps_arith, ps_leading

P = PuiseuxScalar


def series(*pairs):
    return P.from_terms([(F(e), F(c)) for e, c in pairs])


exps = st.fractions(min_value=-6, max_value=6, max_denominator=4)
coefs = st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(lambda c: c != 0)
nonzero_series = st.lists(st.tuples(exps, coefs), min_size=1, max_size=4).map(
    lambda ts: P.from_terms(ts)).filter(lambda s: not s.is_zero)


def test_leading_of_zero():
    assert ps_leading(P.zero()) == (-math.inf, 0)


def test_leading_examples():
    assert ps_leading(series((2, 3), (5, 1))) == (-2, 3)
    assert ps_leading(series((F(1, 2), -1))) == (F(-1, 2), -1)
    assert series((2, 3)).ord == 2


def test_sum_cancels_constant():
    assert ps_arith(series((0, 1), (1, 1)), "add", P.const(-1)) == series((1, 1))


def test_difference_of_construction_constants():
    a0 = P.const(-1)
    b0 = series((0, -1), (7, F("0.36008")))
    c0 = ps_arith(b0, "sub", a0)
    assert c0 == series((7, F(4501, 12500)))
    assert c0.ord == 7


def test_product_of_fractional_powers():
    assert ps_arith(series((1, 1)), "mul", series((F(1, 2), 1))) == series((F(3, 2), 1))


def test_positivity():
    assert is_positive(series((2, 3), (5, 1)))
    assert not is_positive(series((-1, -1), (1, 100)))
    assert not is_positive(P.zero())


def test_zero_coefficients_are_dropped():
    assert series((0, 1), (0, -1)).is_zero
    with pytest.raises(ValueError):
        P(((F(0), F(0)),))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ps_arith(P.const(1), "div", P.zero())


def test_division_geometric_series():
    q = P.const(1) / series((0, 1), (1, -1))
    assert q.truncation is not None
    assert all(c == 1 for _, c in q.terms)
    assert [e for e, _ in q.terms] == list(range(len(q.terms)))


def test_unknown_operation():
    with pytest.raises(ValueError):
        ps_arith(P.const(1), "pow", P.const(2))


@given(nonzero_series, nonzero_series)
def test_valuation_is_multiplicative(a, b):
    assert (a * b).val == a.val + b.val
    assert (a * b).coef == a.coef * b.coef


@given(nonzero_series, nonzero_series)
def test_valuation_of_sum(a, b):
    s = a + b
    if s.is_zero:
        return
    assert s.val <= max(a.val, b.val)
    if a.val != b.val:
        assert s.val == max(a.val, b.val)


@given(nonzero_series, nonzero_series)
def test_division_remainder_vanishes_below_truncation(a, b):
    q = a / b
    r = a - b * q
    assert r.is_zero
    if len(b.terms) == 1:
        assert r.truncation is None
    else:
        assert r.truncation is not None


def test_laurent_poly_merges_and_drops():
    f = LaurentPoly([((0, 0), -1), ((0, 0), series((12, 1))), ((1, 0), 1)])
    assert f[(0, 0)] == series((0, -1), (12, 1))
    g = LaurentPoly([((0, 0), 1), ((0, 0), -1), ((1, 0), 1)])
    assert g.support == {(1, 0)}
    with pytest.raises(ValueError):
        LaurentPoly({(0, 0): 0})


def test_laurent_substitutions():
    f = LaurentPoly({(1, 0): 1, (0, 2): series((1, 3))})
    g = f.torus_substitute(2, F(1, 2))
    assert g[(1, 0)] == series((2, 1))
    assert g[(0, 2)] == series((2, 3))
    assert f.shift_monomial((1, -1)).support == {(2, -1), (1, 1)}
    assert f.monomial_change(((1, 1), (0, 1))).support == {(1, 0), (2, 2)}
