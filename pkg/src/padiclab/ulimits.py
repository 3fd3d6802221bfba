"""p-adic limits of U-iterates of weight-two forms.

Input is a weakly holomorphic weight-two series ``W = sum d(n) q^n`` with
Eichler-type integral ``Phi = sum d(n)/n q^n`` and a normalized eigenform
``g = sum b(n) q^n`` with ``b(p) = 0``.  The constants

    beta  = lim d(p^(2m))   / (-p)^m
    gamma = lim d(p^(2m+1)) / (-p)^m

regularize ``W`` to ``W - beta g - gamma g|V``, whose ``U^(2m+1)`` images,
normalized by their q-coefficient, converge p-adically to g.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import BudgetExceeded, DivisionByNonUnit, ParseError, PrecisionExhausted
from .exactnum import INF, PAdicApprox, padic_limit_estimate, valuation
from .modforms import (
    Eigenform,
    EtaQuotientSpec,
    builtin_32,
    eichler_integral,
    eigenform_from_series,
    eta_quotient_expand,
    load_eigenform,
)
from .qseries import QSeries, compose_inner, d_operator, formal_integral, v_operator
from .report import Report

__all__ = [
    "ConvergenceReport",
    "U_BUDGET",
    "ULimitProblem",
    "eichler_shift_invariance",
    "estimate_beta_gamma",
    "load_problem",
    "problem_32",
    "regularize",
    "u_iterate_certify",
    "zeta_route_problem",
]

U_BUDGET = 300_000


@dataclass(frozen=True)
class ULimitProblem:
    W: QSeries
    b: Eigenform
    p: int
    m_max: int = 2
    n_check: int = 20
    cap: int = 10
    label: str = ""

    def __post_init__(self):
        if self.b.b(self.p) != 0:
            raise ValueError(f"b({self.p}) = {self.b.b(self.p)}; the limit needs b(p) = 0")
        need = self.required_truncation(self.p, self.m_max, self.n_check)
        if self.W.truncation < need:
            raise PrecisionExhausted(f"W known through q^{self.W.truncation}, need q^{need}")
        if self.b.truncation < need:
            raise PrecisionExhausted(f"b known through n = {self.b.truncation}, need {need}")

    @staticmethod
    def required_truncation(p: int, m_max: int, n_check: int) -> int:
        return p ** (2 * m_max + 1) * n_check

    @property
    def Phi(self) -> QSeries:
        return formal_integral(self.W)

    def d(self, n: int) -> Fraction:
        return self.W[n]

    def shifted(self, c) -> "ULimitProblem":
        """Same problem with ``Phi`` replaced by ``Phi + c E_g``."""
        T = self.W.truncation
        return ULimitProblem(
            self.W + self.b.as_qseries(T).scale(Fraction(c)),
            self.b, self.p, self.m_max, self.n_check, self.cap, self.label,
        )


def _approximants(problem: ULimitProblem):
    p = problem.p
    evens = [problem.d(p ** (2 * m)) / Fraction(-p) ** m for m in range(problem.m_max + 1)]
    odds = [problem.d(p ** (2 * m + 1)) / Fraction(-p) ** m for m in range(problem.m_max + 1)]
    return evens, odds


def estimate_beta_gamma(problem: ULimitProblem) -> tuple[PAdicApprox, PAdicApprox]:
    evens, odds = _approximants(problem)
    beta = padic_limit_estimate(evens, problem.p, problem.cap)
    gamma = padic_limit_estimate(odds, problem.p, problem.cap)
    return beta, gamma


@dataclass(frozen=True)
class Regularized:
    """``W - beta g - gamma g|V`` with p-adic coefficient access."""

    problem: ULimitProblem
    beta: PAdicApprox
    gamma: PAdicApprox

    def C(self, n: int) -> PAdicApprox:
        pb = self.problem
        b = pb.b
        bn = b.b(n) if n >= 1 else 0
        bv = b.b(n // pb.p) if n % pb.p == 0 and n >= pb.p else 0
        value = pb.d(n) - self.beta.rational() * bn - self.gamma.rational() * bv
        absprec = INF
        for const, coeff in ((self.beta, bn), (self.gamma, bv)):
            if coeff:
                absprec = min(absprec, const.absprec + valuation(coeff, pb.p))
        if absprec == INF:
            if value == 0:
                return PAdicApprox.exact_zero(pb.p)
            return PAdicApprox.from_rational(value, pb.p, pb.cap)
        return PAdicApprox._from_absolute(value, pb.p, absprec)

    def series(self, representatives: bool = True) -> QSeries:
        """Exact series using the rational representatives of beta and gamma."""
        pb = self.problem
        T = pb.W.truncation
        g = pb.b.as_qseries(T)
        gv = v_operator(g, pb.p).truncate(T)
        return pb.W - g.scale(self.beta.rational()) - gv.scale(self.gamma.rational())


def regularize(problem: ULimitProblem, beta: PAdicApprox, gamma: PAdicApprox) -> Regularized:
    return Regularized(problem, beta, gamma)


@dataclass
class ConvergenceReport:
    beta: PAdicApprox
    gamma: object  # the gamma used for the iteration
    gamma_exceptional: PAdicApprox | None = None
    table: list = field(default_factory=list)  # (m, agreement digits)
    normalizers: list = field(default_factory=list)  # (m, C(p^(2m+1)))
    q_coefficient_is_one: bool = True
    passed: bool = False

    def to_report(self, name: str = "u_iterate") -> Report:
        detail = {
            "beta": self.beta,
            "gamma": self.gamma,
            "gamma_exceptional": self.gamma_exceptional,
            "agreement": self.table,
            "normalizers": self.normalizers,
            "q_coefficient_is_one": self.q_coefficient_is_one,
        }
        return Report(name, self.passed, detail)


def u_iterate_certify(problem: ULimitProblem, gamma=0, beta: PAdicApprox | None = None) -> ConvergenceReport:
    """Agreement of ``R_m = reg|U^(2m+1) / C(p^(2m+1))`` with g on the first ``n_check`` terms.

    The limit exists for every gamma except the exceptional one, so the
    default runs the iteration at ``gamma = 0``.  Passing the exceptional
    value makes the normalizers vanish to the known precision.
    """
    p = problem.p
    beta_est, gamma_exc = estimate_beta_gamma(problem)
    if beta is None:
        beta = beta_est
    if not isinstance(gamma, PAdicApprox):
        gamma = PAdicApprox.exact_zero(p) if gamma == 0 else PAdicApprox.from_rational(gamma, p, problem.cap)
    reg = regularize(problem, beta, gamma)
    rep = ConvergenceReport(beta, gamma, gamma_exc)
    for m in range(problem.m_max + 1):
        N = p ** (2 * m + 1)
        C = reg.C(N)
        if C.is_zero:
            raise DivisionByNonUnit(f"C(p^{2 * m + 1}) = {C} has no significant digit")
        rep.normalizers.append((m, C))
        worst = INF
        for n in range(1, problem.n_check + 1):
            r = reg.C(N * n) / C
            if n == 1 and not (r.is_unit() and r.rational() == 1):
                rep.q_coefficient_is_one = False
            worst = min(worst, r.agreement(Fraction(problem.b.b(n))))
        rep.table.append((m, worst))
    digits = [d for _, d in rep.table]
    rep.passed = (
        rep.q_coefficient_is_one
        and all(d > 0 for d in digits)
        and all(a <= b for a, b in zip(digits, digits[1:]))
    )
    return rep


def eichler_shift_invariance(problem: ULimitProblem, c) -> Report:
    """gamma approximants unchanged, beta approximants shifted by exactly c."""
    c = Fraction(c)
    e0, o0 = _approximants(problem)
    e1, o1 = _approximants(problem.shifted(c))
    gamma_same = o0 == o1
    beta_shift = all(b - a == c for a, b in zip(e0, e1))
    detail = {"c": c, "gamma_identical": gamma_same, "beta_shift_exact": beta_shift}
    return Report("eichler_shift", gamma_same and beta_shift, detail)


# ----------------------------------------------------------------------
# problem builders
# ----------------------------------------------------------------------
def _check_budget(p: int, m_max: int, n_check: int) -> int:
    T = ULimitProblem.required_truncation(p, m_max, n_check)
    if T > U_BUDGET:
        raise BudgetExceeded(
            f"p^(2m+1) * n_check = {T} exceeds {U_BUDGET} series terms; lower --m-max or n_check"
        )
    return T


def problem_32(which: str, p: int, m_max: int = 2, n_check: int = 20) -> ULimitProblem:
    """Level-32 problems: ``W1 = -g L(2 tau)`` or ``W2 = E4(4 tau) / g``."""
    T = _check_budget(p, m_max, n_check)
    cast = builtin_32(T)
    W = {"W1": cast.W1, "W2": cast.W2}[which]
    b = eigenform_from_series(cast.g, level=32)
    return ULimitProblem(W, b, p, m_max, n_check, label=f"32:{which}")


def zeta_route_problem(curve, b: Eigenform, p: int, m_max: int, n_check: int) -> ULimitProblem:
    """``W = -D(zeta(Lambda, E_g(q)))`` for a user-supplied curve and eigenform."""
    from .weierstrass import curve_normalize, zeta_laurent

    T = _check_budget(p, m_max, n_check)
    curve = curve_normalize(curve)
    # the pole of zeta costs two orders of relative precision
    eg = eichler_integral(b, T + 2)
    z = compose_inner(zeta_laurent(curve, T // 2 + 2), eg).truncate(T)
    return ULimitProblem(-d_operator(z), b, p, m_max, n_check, label="zeta-route")


def load_problem(path) -> ULimitProblem:
    """Descriptor lines: ``source``, ``eigenform``, ``curve``, ``p``, ``m_max``, ``n_check``.

    ``source`` is ``builtin W1``, ``builtin W2``, ``eta d^r,d^r,...`` (the
    weight-two W itself) or ``zeta`` (needs ``curve`` and ``eigenform``).
    """
    path = Path(path)
    fields: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(" ")
        if key not in ("source", "eigenform", "curve", "p", "m_max", "n_check"):
            raise ParseError(f"unknown key {key!r}", path, lineno)
        fields[key] = (value.strip(), lineno)
    if "source" not in fields or "p" not in fields:
        raise ParseError("descriptor needs 'source' and 'p'", path)

    def integer(key, default):
        if key not in fields:
            return default
        value, lineno = fields[key]
        try:
            return int(value)
        except ValueError:
            raise ParseError(f"{key} must be an integer", path, lineno) from None

    p = integer("p", None)
    m_max = integer("m_max", 1)
    n_check = integer("n_check", 20)
    source, lineno = fields["source"]
    kind, _, arg = source.partition(" ")
    if kind == "builtin":
        if arg not in ("W1", "W2"):
            raise ParseError(f"unknown builtin {arg!r}", path, lineno)
        return problem_32(arg, p, m_max, n_check)

    def base_dir(value):
        q = Path(value)
        return q if q.is_absolute() else path.parent / q

    if "eigenform" not in fields:
        raise ParseError("non-builtin sources need an eigenform file", path)
    b = load_eigenform(base_dir(fields["eigenform"][0]))
    if kind == "eta":
        try:
            factors = tuple(tuple(int(x) for x in f.split("^")) for f in arg.split(","))
        except ValueError:
            raise ParseError(f"bad eta spec {arg!r}", path, lineno) from None
        T = _check_budget(p, m_max, n_check)
        return ULimitProblem(eta_quotient_expand(EtaQuotientSpec(factors), T), b, p, m_max, n_check, label=arg)
    if kind == "zeta":
        if "curve" not in fields:
            raise ParseError("zeta source needs a curve file", path)
        from .weierstrass import load_curve

        return zeta_route_problem(load_curve(base_dir(fields["curve"][0])), b, p, m_max, n_check)
    raise ParseError(f"unknown source kind {kind!r}", path, lineno)
