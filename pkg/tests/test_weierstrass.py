from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padiclab.errors import ParseError, SingularCurve
from padiclab.modforms import EtaQuotientSpec
from padiclab.qseries import QSeries
from padiclab.weierstrass import (
    CURVE_32,
    CurveModel,
    curve_normalize,
    lattice_eisenstein,
    load_curve,
    twenty_zeta_sides,
    verify_20zeta_identity,
    verify_wp_lift,
    wp_coefficients,
    zeta_laurent,
)

small = st.fractions(min_value=-10, max_value=10, max_denominator=4)


@settings(max_examples=30, deadline=None)
@given(small, small)
def test_wp_satisfies_its_differential_equation(g2, g3):
    if g2**3 == 27 * g3**2:
        return
    curve = CurveModel(g2, g3)
    wp = wp_coefficients(curve, 12).series()
    lhs = wp.derivative() ** 2
    rhs = 4 * wp**3 - wp.scale(g2) - QSeries.one(wp.truncation).scale(g3)
    top = lhs.truncation
    assert lhs.truncate(top) == rhs.truncate(top)


def test_zeta_derivative_is_minus_wp():
    wp = wp_coefficients(CURVE_32, 10).series()
    z = zeta_laurent(CURVE_32, 10)
    assert (-z.derivative()).truncate(wp.truncation) == wp


def test_lattice_eisenstein_matches_Q_and_R():
    c = CurveModel(Fraction(3), Fraction(-2))
    assert lattice_eisenstein(c, 4)["E"] == c.Q == 36
    assert lattice_eisenstein(c, 6)["E"] == c.R == 432


def test_singular_and_normalized_models():
    with pytest.raises(SingularCurve):
        CurveModel(3, 1)
    # 32a2: y^2 = x^3 - x
    assert curve_normalize((0, 0, 0, -1, 0)) == CurveModel(Fraction(4, 1), Fraction(0))


def test_curve_file_parsing(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("# 32B\ng2 -16\ng3 0\n")
    assert load_curve(f) == CURVE_32
    f.write_text("g2 -16\ng3 zero\n")
    with pytest.raises(ParseError) as err:
        load_curve(f)
    assert err.value.line == 2


def test_wp_lift_through_200_terms():
    rep = verify_wp_lift(200)
    assert rep.passed and rep.detail["first_mismatch"] is None


def test_wp_lift_negative_controls():
    perturbed = EtaQuotientSpec(((2, 2), (4, -3), (8, 2), (16, -2)))
    assert not verify_wp_lift(60, perturbed).passed
    assert not verify_wp_lift(60, curve=CurveModel(Fraction(-15), Fraction(0))).passed


def test_twenty_zeta_has_one_sign():
    lhs, rhs = twenty_zeta_sides(60)
    assert lhs == -rhs and lhs != rhs
    rep = verify_20zeta_identity(200)
    assert rep.passed and rep.detail["sigma"] == -1
