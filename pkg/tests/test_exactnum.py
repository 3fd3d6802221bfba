from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padiclab.errors import NonCauchy
from padiclab.exactnum import (
    INF,
    PAdicApprox,
    agreement_profile,
    is_prime,
    legendre_symbol,
    padic_limit_estimate,
    primes_upto,
    residue,
    valuation,
)

PRIMES = st.sampled_from([2, 3, 5, 7, 11, 13])
RATS = st.fractions(max_denominator=10**6).filter(lambda x: x != 0)


def test_valuation_basics():
    assert valuation(0, 3) == INF
    assert valuation(Fraction(18, 5), 3) == 2
    assert valuation(Fraction(5, 27), 3) == -3


def test_residue_and_legendre():
    assert residue(Fraction(1, 2), 3, 2) == 5
    with pytest.raises(ValueError):
        residue(Fraction(1, 3), 3, 1)
    assert [legendre_symbol(2, p) for p in (3, 5, 7, 11, 17)] == [-1, -1, 1, -1, 1]


def test_primes():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1) and is_prime(7919) and not is_prime(7917)


@given(RATS, RATS, PRIMES)
def test_valuation_is_additive_on_products(a, b, p):
    assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)


@given(RATS, RATS, PRIMES)
def test_ultrametric_inequality(a, b, p):
    if a + b != 0:
        assert valuation(a + b, p) >= min(valuation(a, p), valuation(b, p))


@given(RATS, PRIMES, st.integers(1, 6))
def test_approx_residue_matches_rational(x, p, n):
    a = PAdicApprox.from_rational(x, p, n)
    assert a.ord == valuation(x, p)
    assert a.agreement(x) >= a.absprec


def test_approx_arithmetic_tracks_precision():
    a = PAdicApprox.from_rational(Fraction(1, 2), 3, 4)
    b = PAdicApprox.from_rational(Fraction(-1, 2), 3, 4)
    s = a + b
    assert s.is_zero and s.absprec == 4
    assert (a * 3).ord == 1
    assert (a / a).rational() == 1


def test_limit_estimate_certifies_stable_digits():
    seq = [Fraction(1), Fraction(1 + 9), Fraction(1 + 9 + 81)]
    assert agreement_profile(seq, 3) == [2, 4]
    lim = padic_limit_estimate(seq, 3, cap=10)
    assert lim.agreement(Fraction(91)) >= lim.absprec


def test_limit_estimate_rejects_non_cauchy_tail():
    with pytest.raises(NonCauchy):
        padic_limit_estimate([Fraction(1), Fraction(2), Fraction(1)], 3, cap=10)
