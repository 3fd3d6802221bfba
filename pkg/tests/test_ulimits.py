from fractions import Fraction

import pytest

from padiclab.errors import BudgetExceeded, DivisionByNonUnit, ParseError
from padiclab.modforms import builtin_32
from padiclab.ulimits import (
    ULimitProblem,
    eichler_shift_invariance,
    estimate_beta_gamma,
    load_problem,
    problem_32,
    u_iterate_certify,
    zeta_route_problem,
)
from padiclab.weierstrass import CURVE_32


def test_w1_convergence_p3():
    rep = u_iterate_certify(problem_32("W1", 3, 2, 20))
    assert rep.passed and rep.q_coefficient_is_one
    assert rep.table == [(0, 1), (1, 2), (2, 3)]
    assert rep.gamma_exceptional.residue(2) == 5


def test_w1_convergence_p7():
    rep = u_iterate_certify(problem_32("W1", 7, 1, 20))
    assert rep.passed and rep.table == [(0, 1), (1, 2)]
    assert rep.gamma_exceptional.residue(1) == 43 % 7


def test_w2_convergence_p3():
    rep = u_iterate_certify(problem_32("W2", 3, 2, 20))
    assert rep.passed and [d for _, d in rep.table] == [2, 4, 6]


def test_gamma_is_a_unit():
    for p, m in ((3, 2), (7, 1)):
        _, gamma = estimate_beta_gamma(problem_32("W1", p, m, 1))
        assert gamma.ord == 0


def test_exceptional_gamma_kills_the_normalizer():
    problem = problem_32("W1", 3, 2, 20)
    _, gamma = estimate_beta_gamma(problem)
    with pytest.raises(DivisionByNonUnit):
        u_iterate_certify(problem, gamma=gamma)


@pytest.mark.parametrize("c", [0, 1, 5, Fraction(-7, 3)])
def test_eichler_shift(c):
    assert eichler_shift_invariance(problem_32("W1", 3, 2, 1), c).passed


def test_zeta_route_is_minus_w1():
    b = builtin_32(300).eigenform()  # the zeta route needs b through q^(T + 2)
    z = zeta_route_problem(CURVE_32, b, 3, 1, 10)
    w = problem_32("W1", 3, 1, 10)
    assert z.W == -w.W


def test_budget_refusal():
    with pytest.raises(BudgetExceeded):
        problem_32("W1", 11, 2, 20)


def test_problem_requires_b_p_zero():
    cast = builtin_32(200)
    with pytest.raises(ValueError):
        ULimitProblem(cast.W1, cast.eigenform(), 5, 1, 1)


def test_descriptor_files(tmp_path):
    f = tmp_path / "w1.txt"
    f.write_text("source builtin W1\np 3\nm_max 1\nn_check 5\n")
    assert load_problem(f).p == 3
    f.write_text("source builtin W1\np three\n")
    with pytest.raises(ParseError) as err:
        load_problem(f)
    assert err.value.line == 2
    f.write_text("source builtin W1\nflavour 3\n")
    with pytest.raises(ParseError) as err:
        load_problem(f)
    assert err.value.line == 2
