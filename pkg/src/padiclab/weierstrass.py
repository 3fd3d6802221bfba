"""Laurent data of the Weierstrass functions and the level-32 identity checks.

The curve is ``y^2 = 4x^3 - g2 x - g3``.  With
``wp(z) = z^-2 + sum_{k>=2} c_k z^(2k-2)`` one has ``c_2 = g2/20``,
``c_3 = g3/28`` and ``G_{2k} = c_k (2k-2)! / 2``; the Weierstrass zeta
function is ``zeta = 1/z - sum c_k z^(2k-1) / (2k-1)`` so that
``wp = -zeta'``.  Everything is formal: no complex evaluation happens here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path

from .errors import ParseError, SingularCurve
from .exactnum import as_fraction
from .modforms import (
    G_SPEC,
    L_SPEC,
    EtaQuotientSpec,
    bernoulli,
    eichler_integral,
    eigenform_from_series,
    eisenstein_qexp,
    eta_quotient_expand,
    p_series,
)
from .qseries import QSeries, compose_inner, formal_integral
from .report import Report

__all__ = [
    "CURVE_32",
    "CurveModel",
    "WpLaurent",
    "compose_with",
    "curve_normalize",
    "lattice_eisenstein",
    "load_curve",
    "verify_20zeta_identity",
    "verify_wp_lift",
    "wp_coefficients",
    "zeta_laurent",
]


@dataclass(frozen=True)
class CurveModel:
    g2: Fraction
    g3: Fraction

    def __post_init__(self):
        object.__setattr__(self, "g2", as_fraction(self.g2))
        object.__setattr__(self, "g3", as_fraction(self.g3))
        if self.discriminant == 0:
            raise SingularCurve(f"g2^3 = 27 g3^2 for (g2, g3) = ({self.g2}, {self.g3})")

    @property
    def discriminant(self) -> Fraction:
        return self.g2**3 - 27 * self.g3**2

    @property
    def Q(self) -> Fraction:
        return 12 * self.g2

    @property
    def R(self) -> Fraction:
        return -216 * self.g3

    @property
    def short_form(self) -> tuple[Fraction, Fraction]:
        """``(A, B)`` with ``y^2 = x^3 + A x + B`` (substituting y -> 2y)."""
        return -self.g2 / 4, -self.g3 / 4

    def has_good_reduction(self, p: int) -> bool:
        if p == 2:
            return False
        if self.g2.denominator % p == 0 or self.g3.denominator % p == 0:
            return False
        d = self.discriminant
        return d.numerator % p != 0

    def label(self) -> str:
        return f"({self.g2},{self.g3})"


def curve_normalize(data) -> CurveModel:
    """Accept ``(g2, g3)``, a CurveModel, or five a-invariants ``(a1, a2, a3, a4, a6)``."""
    if isinstance(data, CurveModel):
        return data
    vals = [as_fraction(x) for x in data]
    if len(vals) == 2:
        return CurveModel(*vals)
    if len(vals) != 5:
        raise ValueError("expected (g2, g3) or (a1, a2, a3, a4, a6)")
    a1, a2, a3, a4, a6 = vals
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    return CurveModel(c4 / 12, c6 / 216)


def load_curve(path) -> CurveModel:
    """Parse ``g2 <r>`` / ``g3 <r>`` lines or a single ``ainv a1 a2 a3 a4 a6`` line."""
    path = Path(path)
    fields: dict[str, list[str]] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key not in ("g2", "g3", "ainv") or not rest:
            raise ParseError(f"unrecognized curve line {line!r}", path, lineno)
        try:
            [Fraction(x) for x in rest]
        except ValueError:
            raise ParseError(f"non-rational value in {line!r}", path, lineno) from None
        fields[key] = rest
    if "ainv" in fields:
        if len(fields["ainv"]) != 5:
            raise ParseError("ainv needs five values", path)
        return curve_normalize(fields["ainv"])
    if "g2" not in fields or "g3" not in fields:
        raise ParseError("curve file needs both g2 and g3", path)
    return CurveModel(Fraction(fields["g2"][0]), Fraction(fields["g3"][0]))


@dataclass(frozen=True)
class WpLaurent:
    curve: CurveModel
    c: tuple  # c[k] for k = 0..K; entries 0 and 1 are unused zeros

    @property
    def K(self) -> int:
        return len(self.c) - 1

    def G(self, two_k: int) -> Fraction:
        k = two_k // 2
        return self.c[k] * factorial(2 * k - 2) / 2

    def series(self) -> QSeries:
        """``wp`` in z, known through ``z^(2K-1)``."""
        terms = {-2: Fraction(1)}
        for k in range(2, self.K + 1):
            terms[2 * k - 2] = self.c[k]
        return QSeries.from_dict(terms, 2 * self.K - 1)

    def derivative_series(self) -> QSeries:
        return self.series().derivative()


def wp_coefficients(curve: CurveModel, K: int) -> WpLaurent:
    """``c_2..c_K`` from ``c_k = 3 sum_{j=2}^{k-2} c_j c_{k-j} / ((2k+1)(k-3))``."""
    if K < 2:
        raise ValueError("K must be at least 2")
    c = [Fraction(0)] * (K + 1)
    c[2] = curve.g2 / 20
    if K >= 3:
        c[3] = curve.g3 / 28
    for k in range(4, K + 1):
        s = sum(c[j] * c[k - j] for j in range(2, k - 1))
        c[k] = 3 * s / ((2 * k + 1) * (k - 3))
    return WpLaurent(curve, tuple(c))


def zeta_laurent(curve: CurveModel, K: int) -> QSeries:
    """Weierstrass zeta in z, known through ``z^(2K)``."""
    c = wp_coefficients(curve, K).c
    terms = {-1: Fraction(1)}
    for k in range(2, K + 1):
        terms[2 * k - 1] = -c[k] / (2 * k - 1)
    return QSeries.from_dict(terms, 2 * K)


def lattice_eisenstein(curve: CurveModel, two_k: int) -> dict:
    """``{"G": G_2k, "E": E_2k}`` with ``E_2k = -(4k / B_2k) G_2k``."""
    if two_k < 4 or two_k % 2:
        raise ValueError("weight must be even and at least 4")
    G = wp_coefficients(curve, two_k // 2).G(two_k)
    return {"G": G, "E": -Fraction(2 * two_k) / bernoulli(two_k) * G}


def compose_with(laurent: QSeries, inner: QSeries) -> QSeries:
    return compose_inner(laurent, inner)


# ----------------------------------------------------------------------
# level-32 identities
# ----------------------------------------------------------------------
CURVE_32 = CurveModel(Fraction(-16), Fraction(0))


def _eichler_g(T: int) -> tuple[QSeries, QSeries]:
    g = eta_quotient_expand(G_SPEC, T)
    return g, eichler_integral(eigenform_from_series(g, level=32), T)


def verify_wp_lift(T: int, l_spec: EtaQuotientSpec = L_SPEC, curve: CurveModel = CURVE_32) -> Report:
    """Check ``wp(Lambda_32, E_g(q)) = L(2 tau)`` through ``q^T``."""
    _, eg = _eichler_g(T + 3)
    K = (T + 1) // 2 + 1
    lhs = compose_inner(wp_coefficients(curve, K).series(), eg).truncate(T)
    rhs = eta_quotient_expand(l_spec, T // 2 + 1).substitute_power(2).truncate(T)
    miss = lhs.first_mismatch(rhs, T)
    detail = {
        "terms": T,
        "leading_lhs": lhs[-2],
        "leading_rhs": rhs[-2],
        "first_mismatch": miss,
    }
    if miss is not None:
        detail["lhs_at_mismatch"] = lhs[miss]
        detail["rhs_at_mismatch"] = rhs[miss]
    return Report("wp_lift", miss is None, detail)


def twenty_zeta_sides(T: int, curve: CurveModel = CURVE_32) -> tuple[QSeries, QSeries]:
    """``20 zeta(E_g) + int E4(4t)/g dq/q`` and ``(56P(4t) - 32P(8t) + 160P(16t) - 640P(32t))/g``."""
    g, eg = _eichler_g(T + 2)
    K = T // 2 + 2
    zeta_eg = compose_inner(zeta_laurent(curve, K), eg)
    e4_4 = eisenstein_qexp(4, T // 4 + 2).substitute_power(4).truncate(T + 1)
    w2 = (e4_4 / g).truncate(T)
    lhs = (zeta_eg.scale(20) + formal_integral(w2)).truncate(T)
    numer = (
        p_series(T + 1, 4).scale(56)
        - p_series(T + 1, 8).scale(32)
        + p_series(T + 1, 16).scale(160)
        - p_series(T + 1, 32).scale(640)
    )
    rhs = (numer / g).truncate(T)
    return lhs, rhs


def verify_20zeta_identity(T: int, curve: CurveModel = CURVE_32) -> Report:
    """Find the sign(s) sigma with LHS = sigma * RHS through ``q^T``."""
    lhs, rhs = twenty_zeta_sides(T, curve)
    mismatches = {s: lhs.first_mismatch(rhs.scale(s), T) for s in (1, -1)}
    good = [s for s, m in mismatches.items() if m is None]
    detail = {
        "terms": T,
        "lhs_leading": lhs[-1],
        "rhs_leading": rhs[-1],
        "sigma": good[0] if len(good) == 1 else None,
        "first_mismatch": {str(s): m for s, m in mismatches.items()},
        "three_rhs_integral": rhs.scale(3).is_integral(),
    }
    return Report("twenty_zeta_identity", len(good) == 1, detail)
