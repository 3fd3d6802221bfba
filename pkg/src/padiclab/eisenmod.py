"""Eisenstein series as weighted polynomials in Q = E4 and R = E6, and the mod-p checks.

At a lattice with invariants ``g2, g3`` one has ``Q = 12 g2`` and
``R = -216 g3``.  Supersingularity at ``p >= 5`` is the vanishing of the
Hasse invariant ``E_{p-1}(Q, R)`` mod p, witnessed independently by a
brute-force point count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BadReduction, SingularSystem, WitnessDisagreement
from .exactnum import is_prime, legendre_symbol, residue
from .modforms import eisenstein_qexp
from .qseries import QSeries
from .report import Report
from .weierstrass import CurveModel, curve_normalize

__all__ = [
    "WeightedPoly",
    "curve_grid",
    "ek_as_QR",
    "evaluate_weighted",
    "hasse_invariant_mod_p",
    "is_supersingular",
    "point_count",
    "relative_primality_check",
    "verify_mu_congruence",
]


@dataclass(frozen=True)
class WeightedPoly:
    """``sum c(a, b) Q^a R^b`` with ``4a + 6b = weight``."""

    weight: int
    terms: tuple  # sorted ((a, b), c) pairs, c != 0

    def __post_init__(self):
        for (a, b), c in self.terms:
            if 4 * a + 6 * b != self.weight:
                raise ValueError(f"monomial Q^{a} R^{b} does not have weight {self.weight}")
            if c == 0:
                raise ValueError("zero terms are not stored")

    @classmethod
    def from_dict(cls, weight: int, terms: dict) -> "WeightedPoly":
        return cls(weight, tuple(sorted((k, Fraction(v)) for k, v in terms.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def reduce_mod(self, p: int) -> dict:
        """Coefficients mod p; raises if p divides a denominator."""
        out = {}
        for k, c in self.terms:
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"{p} divides the denominator of {c}")
            r = residue(c, p, 1)
            if r:
                out[k] = r
        return out

    def __str__(self):
        parts = [f"{c}*Q^{a}*R^{b}" for (a, b), c in self.terms]
        return " + ".join(parts) or "0"


def _monomials(k: int) -> list[tuple[int, int]]:
    return [(a, (k - 4 * a) // 6) for a in range(k // 4, -1, -1) if (k - 4 * a) % 6 == 0]


def _solve_exact(rows: list[list[Fraction]], n: int) -> list[Fraction]:
    """Row-reduce an overdetermined ``[A | y]`` system; unique solution or SingularSystem."""
    M = [list(r) for r in rows]
    piv_row = 0
    pivots = []
    for col in range(n):
        sel = next((i for i in range(piv_row, len(M)) if M[i][col] != 0), None)
        if sel is None:
            raise SingularSystem(f"column {col} has no pivot")
        M[piv_row], M[sel] = M[sel], M[piv_row]
        pv = M[piv_row][col]
        M[piv_row] = [x / pv for x in M[piv_row]]
        for i in range(len(M)):
            if i != piv_row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[piv_row])]
        pivots.append(col)
        piv_row += 1
    for i in range(piv_row, len(M)):
        if M[i][n] != 0:
            raise SingularSystem("overdetermined system is inconsistent")
    return [M[i][n] for i in range(n)]


@lru_cache(maxsize=None)
def ek_as_QR(k: int) -> WeightedPoly:
    """Express ``E_k`` through ``Q = E4`` and ``R = E6`` by matching q-expansions."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and at least 4")
    mons = _monomials(k)
    n = len(mons)
    T = n + 1
    E4 = eisenstein_qexp(4, T)
    E6 = eisenstein_qexp(6, T)
    cols = [(E4**a * E6**b).truncate(T) for a, b in mons]
    target = eisenstein_qexp(k, T)
    rows = [[c[j] for c in cols] + [target[j]] for j in range(T + 1)]
    sol = _solve_exact(rows, n)
    return WeightedPoly.from_dict(k, dict(zip(mons, sol)))


def qexp_of(poly: WeightedPoly, T: int) -> QSeries:
    """Re-expand a weighted polynomial as a q-series (round-trip check)."""
    E4 = eisenstein_qexp(4, T)
    E6 = eisenstein_qexp(6, T)
    acc = QSeries([], T, T)
    for (a, b), c in poly.terms:
        acc = acc + (E4**a * E6**b).truncate(T).scale(c)
    return acc


def evaluate_weighted(poly: WeightedPoly, curve) -> Fraction:
    curve = curve_normalize(curve)
    Q, R = curve.Q, curve.R
    return sum((c * Q**a * R**b for (a, b), c in poly.terms), Fraction(0))


def point_count(curve, p: int) -> int:
    """``#E(F_p)`` on ``y^2 = x^3 + A x + B`` including the point at infinity."""
    curve = curve_normalize(curve)
    if p < 3 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    if not curve.has_good_reduction(p):
        raise BadReduction(f"{curve.label()} has bad reduction at {p}")
    A, B = (residue(x, p, 1) for x in curve.short_form)
    total = 1
    for x in range(p):
        f = (x * x * x + A * x + B) % p
        total += 1 if f == 0 else 1 + legendre_symbol(f, p)
    return total


def hasse_invariant_mod_p(curve, p: int) -> int:
    """``E_{p-1}(Q, R)`` mod p for p >= 5; for p = 3 the ``x^2`` coefficient of ``x^3 + A x + B``."""
    curve = curve_normalize(curve)
    if p == 3:
        return 0
    return residue(evaluate_weighted(ek_as_QR(p - 1), curve), p, 1)


def is_supersingular(curve, p: int) -> tuple[bool, Report]:
    """Hasse-invariant vanishing, cross-checked by the trace ``p + 1 - #E(F_p) = 0 mod p``.

    For ``p >= 5`` the Hasse bound turns the trace condition into ``#E = p + 1``.
    """
    curve = curve_normalize(curve)
    if not curve.has_good_reduction(p):
        raise BadReduction(f"{curve.label()} has bad reduction at {p}")
    hasse = hasse_invariant_mod_p(curve, p)
    count = point_count(curve, p)
    by_hasse = hasse == 0
    by_count = (p + 1 - count) % p == 0
    detail = {"curve": curve.label(), "p": p, "hasse_mod_p": hasse, "point_count": count, "trace": p + 1 - count}
    if by_hasse != by_count:
        raise WitnessDisagreement(f"Hasse invariant and point count disagree for {curve.label()} at {p}")
    return by_hasse, Report(f"supersingular_{curve.label()}_p{p}", True, detail)


def _mu_for(curve: CurveModel, p: int):
    from .fgl import dieudonne_solve, ec_formal_expansion

    T = max(2 * p * p, 60)
    log = ec_formal_expansion(curve, T)
    return dieudonne_solve(log, p, T, 1)


def verify_mu_congruence(curve, p: int, sign: int | None = None) -> Report:
    """``mu_p = s * (-E_{p+1}/12)`` mod p with one sign s, and the unit statements.

    ``sign=None`` reports the sign that works; a fixed sign is asserted.
    """
    curve = curve_normalize(curve)
    ss, _ = is_supersingular(curve, p)
    if not ss:
        raise ValueError(f"{curve.label()} is not supersingular at {p}")
    sol = _mu_for(curve, p)
    mu = sol.mu_p.residue(1)
    Ep1 = evaluate_weighted(ek_as_QR(p + 1), curve)
    target = residue(-Ep1 / 12, p, 1) if p > 3 else residue(-curve.g2 / 20, p, 1)
    works = [s for s in (1, -1) if (mu - s * target) % p == 0]
    found = works[0] if len(works) == 1 else (None if not works else works)
    detail = {
        "curve": curve.label(),
        "p": p,
        "mu_mod_p": mu,
        "lambda": sol.lambda_p,
        "E_p_plus_1_mod_p": residue(Ep1, p, 1),
        "target_mod_p": target,
        "sign": found,
    }
    if p > 3:
        unit_ok = residue(Ep1, p, 1) != 0
    else:
        detail["discriminant_mod_3"] = residue(curve.discriminant, 3, 1)
        unit_ok = mu != 0 and residue(curve.discriminant, 3, 1) != 0 and residue(Ep1, 3, 1) == 0
    sign_ok = bool(works) if sign is None else sign in works
    return Report(f"mu_congruence_{curve.label()}_p{p}", unit_ok and sign_ok, detail)


# ----------------------------------------------------------------------
# relative primality of the reduced A and B
# ----------------------------------------------------------------------
def _strip(poly: dict) -> tuple[int, int, list[int]]:
    """Split ``Q^e R^f h`` and map h to its univariate form in ``s = Q^3 / R^2``."""
    e = min(a for a, _ in poly)
    f = min(b for _, b in poly)
    h = {(a - e, b - f): c for (a, b), c in poly.items()}
    # h has monomials Q^(3j) R^(2(J-j)); coefficient list by j
    J = max(a for a, _ in h) // 3
    coeffs = [0] * (J + 1)
    for (a, b), c in h.items():
        coeffs[a // 3] = c
    return e, f, coeffs


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim([x % p for x in a]), _poly_trim([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b) and a:
            f = a[-1] * inv % p
            shift = len(a) - len(b)
            a = _poly_trim([(x - f * (b[i - shift] if 0 <= i - shift < len(b) else 0)) % p for i, x in enumerate(a)])
        a, b = b, a
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def relative_primality_check(p: int) -> Report:
    """Reduced ``A = E_{p-1}`` and ``B = E_{p+1}`` share no factor over the algebraic closure of F_p."""
    if p < 5 or not is_prime(p):
        raise ValueError("p must be a prime >= 5")
    A = ek_as_QR(p - 1).reduce_mod(p)
    B = ek_as_QR(p + 1).reduce_mod(p)
    ea, fa, ha = _strip(A)
    eb, fb, hb = _strip(B)
    g = _poly_gcd_mod(ha, hb, p)
    shared_q = ea > 0 and eb > 0
    shared_r = fa > 0 and fb > 0
    coprime = len(g) == 1 and not shared_q and not shared_r
    detail = {
        "p": p,
        "A_QR_exponents": (ea, fa),
        "B_QR_exponents": (eb, fb),
        "A_univariate": ha,
        "B_univariate": hb,
        "gcd_degree": len(g) - 1,
        "A_squarefree_in_Q_R": ea <= 1 and fa <= 1,
    }
    return Report(f"relative_primality_p{p}", coprime and ea <= 1 and fa <= 1, detail)


def curve_grid(bound: int = 5) -> list[CurveModel]:
    """Nonsingular integer pairs with ``|g2|, |g3| <= bound``."""
    out = []
    for g2 in range(-bound, bound + 1):
        for g3 in range(-bound, bound + 1):
            if g2**3 != 27 * g3 * g3:
                out.append(CurveModel(g2, g3))
    return out
