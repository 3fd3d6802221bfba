from fractions import Fraction

import pytest

from padiclab.eisenmod import (
    WeightedPoly,
    curve_grid,
    ek_as_QR,
    evaluate_weighted,
    hasse_invariant_mod_p,
    is_supersingular,
    point_count,
    qexp_of,
    relative_primality_check,
    verify_mu_congruence,
)
from padiclab.errors import BadReduction
from padiclab.modforms import eisenstein_qexp
from padiclab.weierstrass import CURVE_32, CurveModel


def test_e8_e10_e12():
    assert ek_as_QR(8).as_dict() == {(2, 0): 1}
    assert ek_as_QR(10).as_dict() == {(1, 1): 1}
    assert ek_as_QR(12).as_dict() == {(3, 0): Fraction(441, 691), (0, 2): Fraction(250, 691)}


@pytest.mark.parametrize("k", [14, 16, 18, 24, 30])
def test_qexp_round_trip(k):
    assert qexp_of(ek_as_QR(k), 12) == eisenstein_qexp(k, 12)


def test_weighted_poly_rejects_wrong_weight():
    with pytest.raises(ValueError):
        WeightedPoly(8, (((1, 1), Fraction(1)),))


def test_evaluation_at_a_lattice():
    c = CurveModel(Fraction(1), Fraction(2))
    assert evaluate_weighted(ek_as_QR(10), c) == c.Q * c.R == 12 * -432


def test_point_counts():
    assert point_count(CURVE_32, 7) == 8
    assert point_count(CURVE_32, 5) == 8
    with pytest.raises(BadReduction):
        point_count(CurveModel(3, 3), 3)


@pytest.mark.parametrize("p,expected", [(3, True), (5, False), (7, True), (11, True), (13, False)])
def test_supersingular_primes_of_32(p, expected):
    ss, witness = is_supersingular(CURVE_32, p)
    assert ss is expected and witness.passed


def test_hasse_invariant_vanishes_at_7():
    assert hasse_invariant_mod_p(CURVE_32, 7) == 0
    assert hasse_invariant_mod_p(CURVE_32, 5) != 0


@pytest.mark.parametrize("p", [3, 7, 11])
def test_mu_congruence_for_32(p):
    rep = verify_mu_congruence(CURVE_32, p)
    assert rep.passed and rep.detail["sign"] == 1


def test_mu_congruence_needs_supersingular():
    with pytest.raises(ValueError):
        verify_mu_congruence(CURVE_32, 5)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
def test_relative_primality(p):
    assert relative_primality_check(p).passed


def test_grid_size():
    grid = curve_grid(5)
    # singular pairs in the box: (0, 0), (3, 1), (3, -1)
    assert len(grid) == 121 - 3
    assert all(c.g2**3 != 27 * c.g3**2 for c in grid)
