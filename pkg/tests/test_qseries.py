from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padiclab.errors import ParseError
from padiclab.qseries import (
    QSeries,
    compose_inner,
    d_operator,
    formal_integral,
    series_mul,
    series_reversion,
    u_operator,
    v_operator,
)

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@st.composite
def series(draw, lo=-3, n=25):
    cs = draw(st.lists(coeff, min_size=n, max_size=n))
    start = draw(st.integers(lo, 2))
    return QSeries(cs, start, start + n - 1)


@given(series(), st.sampled_from([2, 3, 5, 7]))
def test_u_after_v_is_identity(s, p):
    assert u_operator(v_operator(s, p), p) == s


@settings(max_examples=40, deadline=None)
@given(st.lists(coeff, min_size=15, max_size=15))
def test_reversion_round_trip(cs):
    s = QSeries([0, 1] + cs, 0, 16)
    r = series_reversion(s)
    assert compose_inner(r, s) == QSeries.monomial(1, 16)
    assert compose_inner(s, r) == QSeries.monomial(1, 16)


@given(series(lo=1))
def test_integral_derivative_round_trip(s):
    assert formal_integral(d_operator(s)) == s
    assert d_operator(formal_integral(s)) == s


@settings(max_examples=40, deadline=None)
@given(series(), series())
def test_fast_product_matches_schoolbook(a, b):
    prod = series_mul(a, b)
    direct = {}
    for i, x in a.items():
        for j, y in b.items():
            direct[i + j] = direct.get(i + j, 0) + x * y
    for n in range(a.min_exponent + b.min_exponent, prod.truncation + 1):
        assert prod[n] == direct.get(n, 0)


def test_inverse_of_euler_product_gives_partitions():
    s = QSeries([1, -1, -1, 0, 0, 1, 0, 1], 0, 7)
    assert s.inverse().coefficient_list(0, 7) == [1, 1, 2, 3, 5, 7, 11, 15]


def test_integral_rejects_constant_term():
    with pytest.raises(Exception):
        formal_integral(QSeries([1, 2], 0, 1))


def test_text_round_trip_and_parse_error_line():
    s = QSeries([Fraction(-1, 3), 0, 5], -1, 1)
    assert QSeries.from_text(s.to_text()) == s
    bad = s.to_text().splitlines()
    bad[-1] = "oops"
    with pytest.raises(ParseError) as err:
        QSeries.from_text("\n".join(bad), source="x.q")
    assert err.value.line == len(bad)
