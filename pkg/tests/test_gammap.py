from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padiclab.errors import ArgumentNotPAdicInteger, BadDiscriminant, BudgetExceeded
from padiclab.exactnum import residue
from padiclab.gammap import (
    binom_ord_check,
    catalan,
    catalan_gamma_sequence,
    class_number_h,
    factorial_ord,
    gamma_closed_form,
    gamma_p,
    gamma_p_integer,
    mordell_sign_check,
    odd_M_experiment,
)


def test_gamma_on_integers():
    # Gamma_5(6) = (-1)^6 * 1*2*3*4 = 24
    assert gamma_p_integer(6, 5, 3) == 24
    assert gamma_p_integer(3, 7, 2) == 49 - 2


@given(st.integers(2, 400), st.sampled_from([3, 5, 7]))
def test_functional_equation(x, p):
    N = 3
    a = gamma_p(x, p, N).residue(N)
    b = gamma_p(x + 1, p, N).residue(N)
    factor = -x if x % p else -1
    assert b == factor * a % p**N


@given(st.fractions(max_denominator=50), st.sampled_from([3, 5, 7, 11, 13]))
def test_reflection(x, p):
    if x.denominator % p == 0:
        return
    N = 3
    prod = gamma_p(x, p, N).value * gamma_p(1 - x, p, N).value
    x0 = residue(x, p, 1) or p
    assert prod.residue(N) == (-1) ** x0 % p**N


def test_half_values_and_class_numbers():
    assert [class_number_h(p) for p in (7, 11, 19, 23, 31)] == [1, 1, 1, 3, 3]
    assert gamma_p(Fraction(1, 2), 3, 4).residue(4) == 1
    for p in (7, 11, 19, 23):
        h = class_number_h(p)
        assert gamma_p(Fraction(1, 2), p, 3).residue(3) == (-1) ** ((1 + h) // 2) % p**3
        assert mordell_sign_check(p).passed
    with pytest.raises(BadDiscriminant):
        class_number_h(13)
    with pytest.raises(ArgumentNotPAdicInteger):
        gamma_p(Fraction(1, 3), 3)


@pytest.mark.parametrize("p", [3, 7, 11, 19])
def test_closed_form_ratio_is_a_sign(p):
    cf = gamma_closed_form(p, 4)
    assert cf.value.is_unit()
    assert cf.case_ratio == -1


@pytest.mark.parametrize(
    "p,m,ratio_digits,binomial_digits",
    [(3, 2, [-1, 1, 3], [1, 3, 5]), (7, 2, [0, 2, 4], [2, 4, 6]), (11, 1, [0, 2], [1, 3])],
)
def test_catalan_approximants_approach_closed_form(p, m, ratio_digits, binomial_digits):
    seq = catalan_gamma_sequence(p, m)
    cf = gamma_closed_form(p, max(binomial_digits) + 1)
    assert [cf.value.agreement(r) for r in seq.approximants] == ratio_digits
    assert [cf.value.agreement(r) for r in seq.binomial_form] == binomial_digits


def test_catalan_budget():
    with pytest.raises(BudgetExceeded):
        catalan_gamma_sequence(19, 2)
    assert [catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]


def test_binomial_orders():
    assert factorial_ord(100, 3) == 48
    for p, ms in ((3, (0, 2, 4)), (7, (0, 2, 4)), (11, (0, 2))):
        for m in ms:
            assert binom_ord_check(p, m).passed


def test_odd_M_experiment_runs():
    assert len(odd_M_experiment(3, 3, 1)) == 2
