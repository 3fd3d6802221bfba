from fractions import Fraction

import pytest

from padiclab.errors import FractionalLeadingExponent, HeckeInconsistency, MissingNormalization, ParseError
from padiclab.modforms import (
    G_SPEC,
    EtaQuotientSpec,
    bernoulli,
    builtin_32,
    divisor_sigma,
    eichler_integral,
    eigenform_from_series,
    eisenstein_qexp,
    eta_quotient_expand,
    euler_product,
    load_eigenform,
)


def nonzero(s, upto):
    return {n: c for n, c in s.items() if n <= upto}


def test_euler_product_is_pentagonal():
    assert nonzero(euler_product(12), 12) == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}


def test_level32_cast_values():
    cast = builtin_32(40)
    assert nonzero(cast.g, 13) == {1: 1, 5: -2, 9: -3, 13: 6}
    assert nonzero(cast.L, 11) == {-1: 1, 3: 2, 7: -1, 11: -2}
    assert nonzero(cast.W1, 11) == {-1: -1, 3: 2, 7: 1, 11: -2}
    assert nonzero(cast.W2, 7) == {-1: 1, 3: 242, 7: 2647}


def test_eigenform_recursions_hold_for_level32():
    b = eigenform_from_series(builtin_32(200).g, level=32)
    assert b.b(3) == 0 and b.b(9) == -3 and b.b(27) == 0 and b.b(81) == 9
    assert any("b(p)=0" in note for note in b.checks)


def test_eisenstein_and_bernoulli():
    assert eisenstein_qexp(4, 3).coefficient_list(0, 2) == [1, 240, 2160]
    assert eisenstein_qexp(6, 1)[1] == -504
    assert bernoulli(12) == Fraction(-691, 2730)
    assert divisor_sigma(3, 6)[1:] == [1, 9, 28, 73, 126, 252]


def test_eta_quotient_rejects_fractional_exponent():
    with pytest.raises(FractionalLeadingExponent):
        EtaQuotientSpec(((1, 1),))
    assert G_SPEC.weight == 2


def test_eta_quotient_leading_term():
    s = eta_quotient_expand(EtaQuotientSpec(((1, 24),)), 5)
    assert nonzero(s, 5) == {1: 1, 2: -24, 3: 252, 4: -1472, 5: 4830}


def test_eichler_integral():
    s = eichler_integral(builtin_32(20).eigenform(), 13)
    assert s[5] == Fraction(-2, 5) and s[13] == Fraction(6, 13)


def test_load_eigenform_errors_carry_line_numbers(tmp_path):
    good = "\n".join(f"{n} {c}" for n, c in enumerate(builtin_32(30).eigenform().coefficients, 1))
    f = tmp_path / "g.txt"
    f.write_text("level 32\n" + good + "\n")
    assert load_eigenform(f).level == 32
    f.write_text("1 1\n2 0\n4 0\n")
    with pytest.raises(ParseError) as err:
        load_eigenform(f)
    assert err.value.line == 3
    with pytest.raises(MissingNormalization):
        load_eigenform("1 2\n")
    with pytest.raises(HeckeInconsistency):
        load_eigenform("1 1\n2 1\n3 1\n4 1\n5 1\n6 2\n")
