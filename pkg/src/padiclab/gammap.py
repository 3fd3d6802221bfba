"""Morita's p-adic Gamma function, Catalan approximants and the level-32 closed form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import ArgumentNotPAdicInteger, BadDiscriminant, BudgetExceeded, IndexNotIntegral, NonCauchy
from .exactnum import (
    PAdicApprox,
    agreement_profile,
    as_fraction,
    is_prime,
    legendre_symbol,
    padic_limit_estimate,
    residue,
    valuation,
)
from .report import Report

__all__ = [
    "CATALAN_BUDGET",
    "ClosedForm",
    "GammaValue",
    "binom_ord_check",
    "catalan",
    "catalan_gamma_sequence",
    "class_number_h",
    "factorial_ord",
    "gamma_closed_form",
    "gamma_p",
    "gamma_p_integer",
    "mordell_sign_check",
    "odd_M_experiment",
]

CATALAN_BUDGET = 200_000


def gamma_p_integer(x: int, p: int, N: int) -> int:
    """``(-1)^x prod_{1 <= j < x, p does not divide j} j`` modulo ``p^N``."""
    if x < 2:
        raise ValueError("x must be at least 2")
    mod = p**N
    acc = 1
    for j in range(1, x):
        if j % p:
            acc = acc * j % mod
    return acc if x % 2 == 0 else (-acc) % mod


@dataclass(frozen=True)
class GammaValue:
    p: int
    argument: Fraction
    value: PAdicApprox

    def residue(self, n: int | None = None) -> int:
        return self.value.residue(self.value.precision if n is None else n)


def gamma_p(x, p: int, N: int = 4) -> GammaValue:
    """``Gamma_p(x)`` mod ``p^N`` through one integer lift of x."""
    x = as_fraction(x)
    if x.denominator % p == 0:
        raise ArgumentNotPAdicInteger(f"{x} is not in Z_{p}")
    mod = p**N
    lift = residue(x, p, N)
    while lift < 2:
        lift += mod
    return GammaValue(p, x, PAdicApprox.from_rational(gamma_p_integer(lift, p, N), p, N))


def class_number_h(p: int) -> int:
    """``h(-p) = -(1/p) sum_{a=1}^{p-1} (a|p) a`` for primes ``p = 3 mod 4``, ``p > 3``."""
    if not is_prime(p) or p % 4 != 3 or p <= 3:
        raise BadDiscriminant(f"need a prime p = 3 mod 4 with p > 3, got {p}")
    s = sum(legendre_symbol(a, p) * a for a in range(1, p))
    return -s // p


def mordell_sign_check(p: int) -> Report:
    h = class_number_h(p)
    lhs = factorial((p - 1) // 2) % p
    rhs = (-1) ** ((1 + h) // 2) % p
    return Report(f"mordell_p{p}", lhs == rhs, {"p": p, "h": h, "half_factorial_mod_p": lhs, "expected": rhs})


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("negative index")
    return comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class CatalanSequence:
    p: int
    approximants: tuple  # r_m, exact
    binomial_form: tuple  # the binomial-ratio approximants, exact
    limit: PAdicApprox | None  # None when the agreement profile certifies no digit
    profile: tuple = ()

    @property
    def representative(self) -> Fraction:
        return self.approximants[-1]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "m_max": len(self.approximants) - 1,
            "limit": self.limit,
            "profile": self.profile,
            "representative": self.representative,
        }


def _quarter(n: int) -> int:
    if n % 4:
        raise IndexNotIntegral(f"{n}/4 is not an integer")
    return n // 4


def catalan_gamma_sequence(p: int, m_max: int, cap: int = 10) -> CatalanSequence:
    """``r_m = (2|p) 5 C((p^(2m+1)+1)/4) / (3 C((p^(2m)-1)/4))`` for ``m <= m_max``."""
    if p % 4 != 3:
        raise ValueError(f"p = {p} is not 3 mod 4")
    if p ** (2 * m_max + 1) > CATALAN_BUDGET:
        raise BudgetExceeded(
            f"p^(2m+1) = {p ** (2 * m_max + 1)} exceeds the limit {CATALAN_BUDGET}; lower --m-max"
        )
    s = legendre_symbol(2, p)
    rs, bs = [], []
    for m in range(m_max + 1):
        hi = p ** (2 * m + 1) + 1
        lo = p ** (2 * m) - 1
        rs.append(s * Fraction(5 * catalan(_quarter(hi)), 3 * catalan(_quarter(lo))))
        bs.append(s * Fraction(comb(hi // 2, _quarter(hi)), comb(lo // 2, _quarter(lo))))
    try:
        limit = padic_limit_estimate(rs, p, cap)
    except NonCauchy:
        limit = None
    return CatalanSequence(p, tuple(rs), tuple(bs), limit, tuple(agreement_profile(rs, p)))


@dataclass(frozen=True)
class ClosedForm:
    """``8 (2|p) Gamma_p(1/2) / Gamma_p(1/4)^2`` and the class-number case form."""

    p: int
    value: PAdicApprox
    case_form: PAdicApprox
    case_ratio: int  # case_form = case_ratio * value

    def to_dict(self) -> dict:
        return {"p": self.p, "value": self.value, "case_form": self.case_form, "case_ratio": self.case_ratio}


def gamma_closed_form(p: int, N: int = 4) -> ClosedForm:
    """Both closed forms at precision N, with their ratio (always a sign)."""
    if p % 4 != 3:
        raise ValueError(f"p = {p} is not 3 mod 4")
    half = gamma_p(Fraction(1, 2), p, N).value
    quarter = gamma_p(Fraction(1, 4), p, N).value
    base = PAdicApprox.from_rational(8, p, N) / (quarter * quarter)
    value = base * legendre_symbol(2, p) * half
    if p == 3:
        case = base
    else:
        h = class_number_h(p)
        case = base * (legendre_symbol(2, p) * (-1) ** ((3 + h) // 2))
    if case.agreement(value) >= N:
        ratio = 1
    elif case.agreement(-value) >= N:
        ratio = -1
    else:
        raise ArithmeticError("closed forms differ by more than a sign")
    return ClosedForm(p, value, case, ratio)


def factorial_ord(n: int, p: int) -> int:
    """Legendre's formula for ``ord_p(n!)``."""
    total, q = 0, p
    while q <= n:
        total += n // q
        q *= p
    return total


def _binom_ord(n: int, k: int, p: int) -> int:
    return factorial_ord(n, p) - factorial_ord(k, p) - factorial_ord(n - k, p)


def binom_ord_check(p: int, m: int) -> Report:
    """Both binomials of the ratio have ord_p exactly ``m/2``."""
    if m % 2 or p % 4 != 3:
        raise ValueError("needs even m and p = 3 mod 4")
    hi = p ** (m + 1) + 1
    lo = p**m - 1
    a = _binom_ord(hi // 2, hi // 4, p)
    b = _binom_ord(lo // 2, lo // 4, p)
    # direct valuation of the integers as a second witness, when they are small
    if hi < 5000:
        a_direct = valuation(comb(hi // 2, hi // 4), p)
        b_direct = valuation(comb(lo // 2, lo // 4), p)
        if (a_direct, b_direct) != (a, b):
            raise ArithmeticError("Legendre formula disagrees with direct valuation")
    return Report(f"binom_ord_p{p}_m{m}", a == b == m // 2, {"p": p, "m": m, "ord_upper": a, "ord_lower": b})


def odd_M_experiment(p: int, M: int, m_max: int) -> list[Fraction]:
    """Optional: ``5 C((p^(2m+M)+1)/4) / (3 C((p^(2m)-1)/4))`` for odd M; nothing is asserted."""
    if M % 2 == 0:
        raise ValueError("M must be odd")
    if p ** (2 * m_max + M) > CATALAN_BUDGET:
        raise BudgetExceeded("experiment exceeds the Catalan budget")
    out = []
    for m in range(m_max + 1):
        out.append(Fraction(5 * catalan(_quarter(p ** (2 * m + M) + 1)), 3 * catalan(_quarter(p ** (2 * m) - 1))))
    return out
