from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padiclab.errors import OrdinaryReduction
from padiclab.fgl import (
    binomial_condition_check,
    dieudonne_solve,
    ec_formal_expansion,
    fgl_addition_integrality,
    formal_group_law,
    honda_check,
    honda_series,
    mu_mod_p_via_ptypical,
    p_typical_log,
    solve_to_precision,
)
from padiclab.modforms import builtin_32
from padiclab.qseries import QSeries
from padiclab.weierstrass import CURVE_32

MU_32 = {3: (5, 9), 7: (43, 49), 11: (53, 121)}


@pytest.fixture(scope="module")
def log80():
    return ec_formal_expansion(CURVE_32, 80)


def test_log_and_second_kind_integral(log80):
    assert log80.ell.coefficient_list(1, 13) == [1, 0, 0, 0, Fraction(8, 5), 0, 0, 0, Fraction(32, 3), 0, 0, 0, Fraction(1280, 13)]
    assert log80.xi[-1] == -1 and log80.xi[3] == Fraction(4, 3) and log80.xi[7] == Fraction(48, 7)


@pytest.mark.parametrize("p,K", [(3, 2), (7, 2), (11, 2)])
def test_mu_for_32(p, K):
    sol = solve_to_precision(CURVE_32, p, K)
    rep, mod = MU_32[p]
    assert sol.certified_precision >= K
    assert sol.mu_p.residue(K) == rep % mod
    assert sol.mu_p.is_unit()
    assert sol.lambda_p.absprec >= 1 and sol.lambda_p.residue(1) == 0


@pytest.mark.parametrize("p", [3, 7, 11])
def test_mu_mod_p_matches_p_typical_route(p):
    assert mu_mod_p_via_ptypical(CURVE_32, p) == MU_32[p][0] % p


def test_p_typical_log_shape():
    s = p_typical_log(3, 81)
    assert {n: c for n, c in s.items()} == {1: 1, 9: Fraction(-1, 3), 81: Fraction(1, 9)}


def test_ordinary_prime_is_rejected(log80):
    with pytest.raises(OrdinaryReduction):
        dieudonne_solve(log80, 5)


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=6, max_size=6))
def test_strict_isomorphism_invariance(log80, cs):
    base = dieudonne_solve(log80, 3)
    phi = QSeries([0, 1] + cs, 0, 80)
    sol = dieudonne_solve(log80.substitute(phi), 3)
    assert sol.mu_p.agreement(base.mu_p) >= base.certified_precision
    assert sol.lambda_p.residue(1) == base.lambda_p.residue(1)


def test_binomial_condition_and_its_failure():
    sol = solve_to_precision(CURVE_32, 3, 2)
    assert binomial_condition_check(sol.mu_p, 3, 3000).passed
    assert not binomial_condition_check(sol.mu_p.rational() + 1, 3, 3000).passed


def test_group_law(log80):
    G = formal_group_law(ec_formal_expansion(CURVE_32, 12), 12)
    assert G[(1, 0)] == G[(0, 1)] == 1
    assert fgl_addition_integrality(ec_formal_expansion(CURVE_32, 12), 3, 12).passed


def test_honda_integrality_and_negative_control():
    T = 150
    log = ec_formal_expansion(CURVE_32, T)
    form = builtin_32(T).eigenform()
    series = honda_series(form, log, T)
    for p in (3, 5, 7, 11, 13):
        assert honda_check(form, log, p, T, t_of_q=series).passed
    wrong = builtin_32(T).g + QSeries.monomial(2, T)
    assert not all(honda_check(wrong, log, p, T).passed for p in (3, 5, 7))
