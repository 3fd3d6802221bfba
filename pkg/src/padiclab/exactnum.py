"""Exact rationals, p-adic approximations, valuations and Legendre symbols.

Rationals are plain :class:`fractions.Fraction` values.  A p-adic number is
held as ``p**valuation * unit`` with the unit known modulo ``p**precision``
(relative precision).  Two special states exist:

* the exact zero, ``valuation is None``;
* an approximate zero ``O(p**a)``, stored as ``valuation=a, unit=0,
  precision=0``: only a lower bound on the valuation is known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonCauchy, PrecisionExhausted

INF = math.inf

__all__ = [
    "INF",
    "PAdicApprox",
    "as_fraction",
    "is_prime",
    "legendre_symbol",
    "padic_limit_estimate",
    "primes_upto",
    "residue",
    "valuation",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {type(x).__name__} as an exact rational")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if is_prime(q)]


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, p: int):
    """ord_p of an integer or rational; ``INF`` for zero."""
    x = as_fraction(x)
    if x == 0:
        return INF
    return _int_val(x.numerator, p) - _int_val(x.denominator, p)


def residue(x, p: int, n: int) -> int:
    """Reduce a p-integral rational modulo ``p**n``."""
    x = as_fraction(x)
    mod = p**n
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, mod) % mod


def legendre_symbol(a: int, p: int) -> int:
    """Euler-criterion Legendre symbol (a|p) for an odd prime p."""
    if p == 2:
        raise ValueError("legendre_symbol needs an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


@dataclass(frozen=True)
class PAdicApprox:
    """``p**valuation * unit + O(p**(valuation + precision))``."""

    p: int
    valuation: int | None
    unit: int = 0
    precision: int = 0
    profile: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.valuation is None:
            return
        if self.precision < 0:
            raise ValueError("negative precision")
        if self.precision > 0:
            mod = self.p**self.precision
            if not 0 < self.unit < mod or self.unit % self.p == 0:
                raise ValueError(f"bad unit {self.unit} for precision {self.precision}")
        elif self.unit != 0:
            raise ValueError("approximate zero must carry unit 0")

    # construction -----------------------------------------------------
    @classmethod
    def from_rational(cls, x, p: int, precision: int) -> "PAdicApprox":
        x = as_fraction(x)
        if x == 0:
            return cls(p, None)
        v = valuation(x, p)
        u = x / Fraction(p) ** v
        return cls(p, v, residue(u, p, precision), precision)

    @classmethod
    def exact_zero(cls, p: int) -> "PAdicApprox":
        return cls(p, None)

    @classmethod
    def approx_zero(cls, p: int, absprec: int) -> "PAdicApprox":
        return cls(p, absprec, 0, 0)

    @classmethod
    def _from_absolute(cls, x: Fraction, p: int, absprec) -> "PAdicApprox":
        if absprec == INF:
            raise PrecisionExhausted("exact nonzero values have no finite p-adic form")
        v = valuation(x, p)
        if v >= absprec:
            return cls.approx_zero(p, absprec)
        return cls.from_rational(x, p, absprec - v)

    # views ------------------------------------------------------------
    @property
    def is_exact_zero(self) -> bool:
        return self.valuation is None

    @property
    def is_zero(self) -> bool:
        """True for the exact zero and for O(p^a)."""
        return self.valuation is None or self.precision == 0

    @property
    def absprec(self):
        if self.valuation is None:
            return INF
        return self.valuation + self.precision

    @property
    def ord(self):
        return INF if self.valuation is None else self.valuation

    def is_unit(self) -> bool:
        return self.valuation == 0 and self.precision > 0

    def rational(self) -> Fraction:
        """The canonical rational representative ``p**v * unit``."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.p) ** self.valuation * self.unit

    def residue(self, n: int) -> int:
        """The value modulo ``p**n``; needs valuation >= 0 and n <= absprec."""
        if n > self.absprec:
            raise PrecisionExhausted(f"asked for {n} digits, only {self.absprec} known")
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise ValueError("value is not p-integral")
        return residue(self.rational(), self.p, n)

    def with_precision(self, n: int) -> "PAdicApprox":
        """Drop to relative precision ``n`` (never raises it)."""
        if self.is_zero or n >= self.precision:
            return self
        return PAdicApprox(self.p, self.valuation, self.unit % self.p**n, n)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "PAdicApprox | Fraction":
        if isinstance(other, PAdicApprox):
            if other.p != self.p:
                raise ValueError("mixing different primes")
            return other
        return as_fraction(other)

    def __neg__(self):
        if self.is_zero:
            return self
        return PAdicApprox(self.p, self.valuation, (-self.unit) % self.p**self.precision, self.precision)

    def __add__(self, other):
        other = self._coerce(other)
        if isinstance(other, Fraction):
            if other == 0:
                return self
            if self.is_exact_zero:
                raise PrecisionExhausted("exact zero plus exact rational is not p-adic data")
            return PAdicApprox._from_absolute(self.rational() + other, self.p, self.absprec)
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        a = min(self.absprec, other.absprec)
        return PAdicApprox._from_absolute(self.rational() + other.rational(), self.p, a)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.p
        if isinstance(other, Fraction):
            if other == 0 or self.is_exact_zero:
                return PAdicApprox.exact_zero(p)
            v = valuation(other, p)
            if self.precision == 0:
                return PAdicApprox.approx_zero(p, self.valuation + v)
            return PAdicApprox.from_rational(self.rational() * other, p, self.precision)
        if self.is_exact_zero or other.is_exact_zero:
            return PAdicApprox.exact_zero(p)
        if self.precision == 0 or other.precision == 0:
            # |x*y| <= p^-(v1+v2); absolute precision follows the fuzzier factor
            lo = [self.valuation + other.absprec, other.valuation + self.absprec]
            return PAdicApprox.approx_zero(p, min(lo))
        n = min(self.precision, other.precision)
        return PAdicApprox.from_rational(self.rational() * other.rational(), p, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if isinstance(other, Fraction):
            if other == 0:
                raise ZeroDivisionError
            return self * (1 / other)
        if other.is_zero:
            raise PrecisionExhausted("division by a p-adic zero")
        if self.is_exact_zero:
            return self
        if self.precision == 0:
            return PAdicApprox.approx_zero(self.p, self.valuation - other.valuation)
        n = min(self.precision, other.precision)
        return PAdicApprox.from_rational(self.rational() / other.rational(), self.p, n)

    def __rtruediv__(self, other):
        return PAdicApprox.from_rational(as_fraction(other), self.p, max(self.precision, 1)) / self

    def agreement(self, other) -> float:
        """Absolute p-adic agreement: ord(self - other), capped by known digits."""
        other = self._coerce(other)
        if isinstance(other, Fraction):
            cap = self.absprec
            diff = self.rational() - other
        else:
            cap = min(self.absprec, other.absprec)
            diff = self.rational() - other.rational()
        return min(valuation(diff, self.p), cap)

    def __repr__(self):
        if self.valuation is None:
            return f"PAdicApprox(0, p={self.p}, exact)"
        if self.precision == 0:
            return f"PAdicApprox(O({self.p}^{self.valuation}))"
        return (
            f"PAdicApprox({self.p}^{self.valuation}*{self.unit} "
            f"+ O({self.p}^{self.absprec}))"
        )


def agreement_profile(seq: Sequence, p: int) -> list:
    return [valuation(as_fraction(b) - as_fraction(a), p) for a, b in zip(seq, seq[1:])]


def padic_limit_estimate(seq: Iterable, p: int, cap: int, tail: int = 1) -> PAdicApprox:
    """Estimate the p-adic limit of a rational sequence from its last term.

    The agreement profile is ``ord_p(x[k+1] - x[k])``.  It must weakly
    increase and show some growth; the relative precision of the result is
    the minimum agreement over the last ``tail`` pairs, less the valuation
    of the last term, capped at ``cap``.
    """
    seq = [as_fraction(x) for x in seq]
    if not seq:
        raise ValueError("empty sequence")
    last = seq[-1]
    profile = agreement_profile(seq, p)
    if any(b < a for a, b in zip(profile, profile[1:])):
        raise NonCauchy(f"agreement profile {profile} decreases")
    if len(profile) >= 2 and profile[-1] != INF and profile[-1] <= profile[0]:
        raise NonCauchy(f"agreement profile {profile} shows no growth")
    agreement = min(profile[-tail:]) if profile else INF
    if last == 0:
        absprec = cap if agreement == INF else min(agreement, cap)
        return PAdicApprox(p, absprec, 0, 0, tuple(profile))
    v = valuation(last, p)
    rel = cap if agreement == INF else min(agreement - v, cap)
    if rel <= 0:
        raise NonCauchy(f"agreement profile {profile} yields no significant digit")
    approx = PAdicApprox.from_rational(last, p, rel)
    return PAdicApprox(p, approx.valuation, approx.unit, approx.precision, tuple(profile))
