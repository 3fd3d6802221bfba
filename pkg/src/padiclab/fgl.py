"""Formal group of an elliptic curve: logarithm, second-kind integral, Dieudonne data.

Parameter conventions.  For ``y^2 = 4x^3 - g2 x - g3`` put ``Y = y/2`` so
``Y^2 = x^3 + A x + B`` with ``A = -g2/4``, ``B = -g3/4``.  The parameter
``t = -2x/y = -x/Y`` is the usual ``z``; with ``w = -1/Y`` one has
``w = t^3 + A t w^2 + B w^3``, ``x = t/w`` and the invariant differential
``dx/y = dx/(2Y)``.  Then ``ell = int dx/y`` and ``xi = int x dx/y``, whose
pole is ``-1/t``.  Under ``u = ell(t)`` these are ``x = wp(u)`` and
``xi = -zeta(u)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadReduction, MembershipViolation, NoUnitDeterminant, OrdinaryReduction
from .exactnum import INF, PAdicApprox, residue, valuation
from .modforms import Eigenform, eichler_integral
from .qseries import QSeries, compose_inner, series_reversion
from .report import Report
from .weierstrass import CurveModel, curve_normalize, zeta_laurent

__all__ = [
    "DieudonneSolution",
    "FormalLog",
    "binomial_condition_check",
    "dieudonne_solve",
    "ec_formal_expansion",
    "fgl_addition_integrality",
    "formal_group_law",
    "honda_check",
    "honda_series",
    "mu_mod_p_via_ptypical",
    "p_typical_log",
    "solve_to_precision",
]


@dataclass(frozen=True)
class FormalLog:
    curve: CurveModel | None
    ell: QSeries
    xi: QSeries

    @property
    def truncation(self) -> int:
        return min(self.ell.truncation, self.xi.truncation)

    def substitute(self, phi: QSeries) -> "FormalLog":
        """Pull back along a strict isomorphism ``t = phi(u) = u + ...``."""
        if phi.order() != 1 or phi[1] != 1:
            raise ValueError("a strict isomorphism starts u + O(u^2)")
        return FormalLog(self.curve, compose_inner(self.ell, phi), compose_inner(self.xi, phi))


def _solve_w(A: Fraction, B: Fraction, T: int) -> QSeries:
    """``W = w/t^3`` from ``W = 1 + A t^4 W^2 + B t^6 W^3`` by Newton steps."""
    W = QSeries.one(0)
    n = 0
    while n < T:
        n = min(2 * n + 4, T)
        Wn = W.as_exact(n)
        t4 = QSeries.monomial(4, n, A)
        t6 = QSeries.monomial(6, n, B)
        W2 = Wn * Wn
        F = Wn - 1 - t4 * W2 - t6 * W2 * Wn
        dF = 1 - (t4 * Wn).scale(2) - (t6 * W2).scale(3)
        W = (Wn - F / dF).truncate(n)
    return W


def ec_formal_expansion(curve, T: int) -> FormalLog:
    """``ell`` and ``xi`` in the parameter ``t``, both known through ``t^T``."""
    curve = curve_normalize(curve)
    A, B = curve.short_form
    W = _solve_w(A, B, T + 1)
    x = QSeries.monomial(-2, T + 1) / W  # t/w
    minus_inv_Y = QSeries.monomial(3, T + 4) * W  # w = -1/Y
    omega = (x.derivative() * minus_inv_Y).scale(Fraction(-1, 2))  # dx / (2Y)
    ell = _integrate(omega)
    xi = _integrate(x * omega)
    return FormalLog(curve, ell.truncate(T), xi.truncate(T))


def _integrate(s: QSeries) -> QSeries:
    if s.min_exponent <= -1 <= s.truncation and s[-1] != 0:
        raise ValueError("residue at t = 0 is not zero")
    return s.antiderivative()


# ----------------------------------------------------------------------
# Honda
# ----------------------------------------------------------------------
def honda_check(b, log: FormalLog, p: int, T: int, t_of_q: QSeries | None = None) -> Report:
    """Is ``ell^{-1}(E_b(q))`` p-integral through ``q^T``?"""
    if p == 2:
        raise ValueError("p must be odd")
    if t_of_q is None:
        t_of_q = honda_series(b, log, T)
    ords = t_of_q.ord_p(p, T)
    bad = [n for n, c in t_of_q.items() if n <= T and valuation(c, p) < 0]
    detail = {"p": p, "terms": T, "min_ord": ords, "first_nonintegral": bad[0] if bad else None}
    return Report(f"honda_p{p}", not bad, detail)


def honda_series(b, log: FormalLog, T: int) -> QSeries:
    """``t(q) = ell^{-1}(E_b(q))`` through ``q^T``."""
    if isinstance(b, Eigenform):
        eb = eichler_integral(b, T)
    else:
        eb = b.truncate(T)
    inv = series_reversion(log.ell.truncate(T))
    return compose_inner(inv, eb).truncate(T)


# ----------------------------------------------------------------------
# Dieudonne solve
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class DieudonneSolution:
    p: int
    lambda_p: PAdicApprox
    mu_p: PAdicApprox
    certified_precision: int
    residual_report: tuple = field(default=(), compare=False)
    representatives: tuple = field(default=(0, 0), compare=False)
    denominator_depth: int = 0

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "lambda": self.lambda_p,
            "mu": self.mu_p,
            "certified_precision": self.certified_precision,
            "denominator_depth": self.denominator_depth,
        }


def _membership_rows(log: FormalLog, p: int, T: int):
    """Per exponent ``n``: ``(n, a_n, b_n, c_n)`` with the coefficient of the combination ``a + lam b + mu c``."""
    ell = log.ell.truncate(T)
    xi = log.xi.truncate(T)
    rows = []
    for n in range(xi.min_exponent, T + 1):
        a = xi[n]
        b = ell[n] if n >= 1 else Fraction(0)
        c = ell[n // p] / p if n % p == 0 and n >= p else Fraction(0)
        if a or b or c:
            rows.append((n, a, b, c))
    return rows


def _snf_solve(rows: list[list[int]], p: int, M: int):
    """Solve ``b lam + c mu + a = 0 (mod p^M)`` for rows ``[b, c, a]``.

    Returns representatives ``(lam, mu)`` and their absolute precisions.
    Row operations act on the constant column; column operations are
    tracked in ``V`` so that ``(lam, mu) = V y``.
    """
    P = p**M
    R = [[x % P for x in row] for row in rows]
    V = [[1, 0], [0, 1]]
    exps = [M, M]

    def v(x):
        x %= P
        if x == 0:
            return M
        e = 0
        while x % p == 0:
            x //= p
            e += 1
        return e

    for k in range(2):
        best = None
        for i in range(k, len(R)):
            for j in range(k, 2):
                e = v(R[i][j])
                if e < M and (best is None or e < best[0]):
                    best = (e, i, j)
        if best is None:
            break
        e, i, j = best
        R[k], R[i] = R[i], R[k]
        if j != k:
            for row in R:
                row[k], row[j] = row[j], row[k]
            for row in V:
                row[k], row[j] = row[j], row[k]
        unit = (R[k][k] // p**e) % P
        inv = pow(unit, -1, P)
        R[k] = [(x * inv) % P for x in R[k]]  # pivot is now p^e
        pe = p**e
        for i2 in range(len(R)):
            if i2 != k and R[i2][k]:
                f = R[i2][k] // pe
                R[i2] = [(x - f * y) % P for x, y in zip(R[i2], R[k])]
        for j2 in range(k + 1, 2):
            if R[k][j2]:
                f = R[k][j2] // pe
                for row in R:
                    row[j2] = (row[j2] - f * row[k]) % P
                for row in V:
                    row[j2] = (row[j2] - f * row[k]) % P
        exps[k] = e

    y = []
    for k in range(2):
        rk = R[k][2] if k < len(R) else 0
        e = exps[k]
        if v(rk) < e:
            raise MembershipViolation(f"no (lambda, mu) makes every coefficient {p}-integral")
        y.append((-(rk // p**e)) % p ** (M - e) if e < M else 0)
    for row in R[2:]:
        if row[2] % P:
            raise MembershipViolation(f"no (lambda, mu) makes every coefficient {p}-integral")
    sol = [sum(V[j][k] * y[k] for k in range(2)) % P for j in range(2)]
    precs = [min(v(V[j][k]) + M - exps[k] for k in range(2)) for j in range(2)]
    return sol, precs


def _require_supersingular(curve, p: int) -> None:
    if curve is None:
        return
    from .eisenmod import is_supersingular

    if not is_supersingular(curve, p)[0]:
        raise OrdinaryReduction(f"{curve.label()} is ordinary at {p}; the Dieudonne pair needs supersingular reduction")


def dieudonne_solve(log: FormalLog, p: int, T: int | None = None, target_precision: int = 1) -> DieudonneSolution:
    """``lam, mu`` in Z_p with ``xi + lam ell + (mu/p) ell(t^p)`` p-integral through ``t^T``.

    ``certified_precision`` is the number of p-adic digits of ``mu`` fixed by
    the constraints; ``lambda_p`` carries its own absolute precision, which
    for height-two groups is often lower.
    """
    T = log.truncation if T is None else T
    if T > log.truncation:
        raise ValueError(f"log known only through t^{log.truncation}")
    _require_supersingular(log.curve, p)
    rows = _membership_rows(log, p, T)
    M = 0
    for _, a, b, c in rows:
        for x in (a, b, c):
            if x:
                M = max(M, -valuation(x, p))
    if M == 0:
        raise NoUnitDeterminant("every coefficient is already integral: no constraints")
    scale = Fraction(p**M)
    int_rows = [
        [residue(b * scale, p, M), residue(c * scale, p, M), residue(a * scale, p, M)]
        for _, a, b, c in rows
    ]
    (lam, mu), (plam, pmu) = _snf_solve(int_rows, p, M)
    prec = pmu
    if prec < target_precision or plam < 1:
        raise NoUnitDeterminant(
            f"constraints through t^{T} certify {prec} digits of mu and {plam} of lambda (wanted {target_precision}); raise T"
        )
    margins = []
    for n, a, b, c in rows:
        val = a + lam * b + mu * c
        vv = valuation(val, p)
        if vv < 0:
            raise MembershipViolation(f"coefficient of t^{n} has ord {vv} after the solve")
        if min(valuation(x, p) for x in (a, b, c) if x) < 0:
            margins.append((n, vv))
    return DieudonneSolution(
        p=p,
        lambda_p=PAdicApprox._from_absolute(Fraction(lam), p, plam),
        mu_p=PAdicApprox._from_absolute(Fraction(mu), p, pmu),
        certified_precision=prec,
        residual_report=tuple(margins),
        representatives=(lam, mu),
        denominator_depth=M,
    )


def solve_to_precision(curve, p: int, K: int, T0: int | None = None, T_max: int = 4000) -> DieudonneSolution:
    """Raise the truncation from ``p^2 (K + 1)`` until mu is certified to K digits."""
    curve = curve_normalize(curve)
    _require_supersingular(curve, p)
    T = T0 or max(p * p * (K + 1), 30)
    while True:
        log = ec_formal_expansion(curve, T)
        try:
            return dieudonne_solve(log, p, T, K)
        except NoUnitDeterminant:
            if T >= T_max:
                raise
            T = min(2 * T, T_max)


def binomial_condition_check(mu, p: int, T: int) -> Report:
    """Level-32 instance of the membership condition at exponents ``4n - 1 = p(4s + 1)``.

    With ``mu`` given to finite precision, exponents whose ``mu`` coefficient
    has too deep a denominator for that precision are skipped and counted.
    """
    from math import comb

    if p % 4 != 3:
        raise ValueError("needs p = 3 mod 4")
    absprec = mu.absprec if isinstance(mu, PAdicApprox) else INF
    mu = mu.rational() if isinstance(mu, PAdicApprox) else Fraction(mu)
    worst = INF
    checked = skipped = 0
    for s in range(0, T):
        e = p * (4 * s + 1)
        if e > T:
            break
        n = (e + 1) // 4
        denom = p * (4 * s + 1)
        coeff = Fraction(4**s * comb(2 * s, s), denom)
        if valuation(coeff, p) + absprec < 0:
            skipped += 1
            continue
        val = Fraction(4**n * comb(2 * n, n), 2 * denom) + mu * coeff
        worst = min(worst, valuation(val, p))
        checked += 1
    detail = {"p": p, "exponents_checked": checked, "skipped_for_precision": skipped, "min_ord": worst}
    return Report(f"binomial_condition_p{p}", worst >= 0 and checked > 0, detail)


# ----------------------------------------------------------------------
# p-typical route
# ----------------------------------------------------------------------
def p_typical_log(p: int, T: int) -> QSeries:
    """``sum (-1)^n u^(p^(2n)) / p^n`` through ``u^T``."""
    terms = {}
    n, e = 0, 1
    while e <= T:
        terms[e] = Fraction((-1) ** n, p**n)
        n, e = n + 1, e * p * p
    return QSeries.from_dict(terms, T)


def mu_mod_p_via_ptypical(curve, p: int) -> int:
    """``p [u^p] zeta(ell_t(u))`` reduced mod p, i.e. ``-2 G_{p+1} / (p-1)!``."""
    curve = curve_normalize(curve)
    if not curve.has_good_reduction(p):
        raise BadReduction(f"{curve.label()} has bad reduction at {p}")
    K = (p + 1) // 2 + 1
    z = compose_inner(zeta_laurent(curve, K), p_typical_log(p, p + 2))
    val = p * z[p]
    if valuation(val, p) < 0:
        raise BadReduction(f"u^{p} coefficient {z[p]} is not controlled at {p}")
    return residue(val, p, 1)


# ----------------------------------------------------------------------
# bivariate group law
# ----------------------------------------------------------------------
def _bimul(a: dict, b: dict, D: int) -> dict:
    out: dict = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            if i + j + k + l <= D:
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


def formal_group_law(log: FormalLog, D: int) -> dict:
    """``G(u, v) = ell^{-1}(ell(u) + ell(v))`` as ``{(i, j): coeff}`` up to total degree D."""
    if D > log.ell.truncation:
        raise ValueError("logarithm too short for the requested degree")
    ell = log.ell.truncate(D)
    inv = series_reversion(ell)
    S = {}
    for n, c in ell.items():
        S[(n, 0)] = S.get((n, 0), 0) + c
        S[(0, n)] = S.get((0, n), 0) + c
    acc: dict = {}
    for k in range(D, 0, -1):
        acc = _bimul(acc, S, D) if acc else {}
        ck = inv[k]
        if ck:
            acc[(0, 0)] = acc.get((0, 0), 0) + ck
    return _bimul(acc, S, D)


def fgl_addition_integrality(log: FormalLog, p: int, D: int) -> Report:
    G = formal_group_law(log, D)
    worst = min((valuation(c, p) for c in G.values()), default=INF)
    symmetric = all(G.get((j, i), 0) == c for (i, j), c in G.items())
    slice_ok = {k: v for k, v in G.items() if k[1] == 0} == {(1, 0): 1}
    detail = {"p": p, "degree": D, "min_ord": worst, "commutative": symmetric, "identity_slice": slice_ok}
    return Report(f"fgl_addition_p{p}", worst >= 0 and symmetric and slice_ok, detail)
