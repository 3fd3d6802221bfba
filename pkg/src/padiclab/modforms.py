"""Eta quotients, Eisenstein series, Bernoulli numbers and eigenform input.

Everything here is an exact q-expansion builder.  The built-in level-32
objects are ``g = eta(4t)^2 eta(8t)^2``, the Hauptmodul
``L = eta(8t)^6 / (eta(4t)^2 eta(16t)^4)`` and the two weight-two inputs
``-g(t) L(2t)`` and ``E4(4t) / g(t)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path

from . import cache
from .errors import (
    FractionalLeadingExponent,
    HeckeInconsistency,
    MissingNormalization,
    ParseError,
)
from .exactnum import is_prime
from .qseries import QSeries, formal_integral

__all__ = [
    "Builtin32",
    "Eigenform",
    "EtaQuotientSpec",
    "G_SPEC",
    "L_SPEC",
    "bernoulli",
    "builtin_32",
    "divisor_sigma",
    "eichler_integral",
    "eigenform_from_series",
    "eisenstein_qexp",
    "eta_quotient_expand",
    "euler_product",
    "load_eigenform",
    "p_series",
]


@dataclass(frozen=True)
class EtaQuotientSpec:
    """``prod eta(d tau)^r`` for the listed ``(d, r)`` pairs."""

    factors: tuple

    def __post_init__(self):
        facs = tuple((int(d), int(r)) for d, r in self.factors)
        object.__setattr__(self, "factors", facs)
        ds = [d for d, _ in facs]
        if any(d <= 0 for d in ds) or len(set(ds)) != len(ds):
            raise ValueError(f"multipliers must be distinct positive integers: {ds}")
        if self.weighted_sum % 24:
            raise FractionalLeadingExponent(
                f"leading exponent {self.weighted_sum}/24 is not an integer"
            )

    @property
    def weighted_sum(self) -> int:
        return sum(d * r for d, r in self.factors)

    @property
    def leading_exponent(self) -> int:
        return self.weighted_sum // 24

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    def key(self) -> str:
        return "eta:" + ",".join(f"{d}^{r}" for d, r in sorted(self.factors))


G_SPEC = EtaQuotientSpec(((4, 2), (8, 2)))
L_SPEC = EtaQuotientSpec(((8, 6), (4, -2), (16, -4)))


def euler_product(n: int) -> QSeries:
    """``prod_{k>=1} (1 - q^k)`` through ``q^n`` via the pentagonal number theorem."""
    cs = [0] * (n + 1)
    k = 0
    while True:
        hit = False
        for j in ((k, -k) if k else (0,)):
            e = j * (3 * j - 1) // 2
            if e <= n:
                cs[e] = -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return QSeries(cs, 0, n)


def eta_quotient_expand(spec: EtaQuotientSpec, T: int) -> QSeries:
    """Exact integer q-expansion of the eta quotient through ``q^T``."""
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec(tuple(spec))
    return cache.cached_series(spec.key(), T, lambda t: _expand_eta(spec, t))


def _expand_eta(spec: EtaQuotientSpec, T: int) -> QSeries:
    lead = spec.leading_exponent
    depth = T - lead
    if depth < 0:
        return QSeries([], T, T)
    body = QSeries.one(depth)
    for d, r in spec.factors:
        base = euler_product(depth // d) ** r
        body = (body * base.substitute_power(d).as_exact(depth) if r else body).truncate(depth)
    return body.shift(lead).truncate(T)


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    bs = [Fraction(1)]
    for m in range(1, n + 1):
        bs.append(-sum(comb(m + 1, j) * bs[j] for j in range(m)) / (m + 1))
    return tuple(bs)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2, B_2 = 1/6)."""
    if n < 0:
        raise ValueError("negative index")
    return _bernoulli_table(n)[n]


def divisor_sigma(k: int, n: int) -> list[int]:
    """``[sigma_k(0)=0, sigma_k(1), ..., sigma_k(n)]`` by a divisor sieve."""
    out = [0] * (n + 1)
    for d in range(1, n + 1):
        dk = d**k
        for m in range(d, n + 1, d):
            out[m] += dk
    return out


def eisenstein_qexp(k: int, T: int) -> QSeries:
    """``E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n`` through ``q^T``."""
    if k < 4 or k % 2:
        raise ValueError("weight must be an even integer >= 4")

    def build(t):
        c = -Fraction(2 * k) / bernoulli(k)
        sig = divisor_sigma(k - 1, max(t, 0))
        return QSeries([1] + [c * s for s in sig[1:]], 0, t)

    return cache.cached_series(f"E{k}", T, build)


def p_series(T: int, d: int = 1) -> QSeries:
    """``P(d tau)`` with ``P = 1/24 - sum sigma_1(n) q^n``, through ``q^T``."""
    base_t = T // d + 1
    sig = divisor_sigma(1, base_t)
    base = QSeries([Fraction(1, 24)] + [-s for s in sig[1:]], 0, base_t)
    return base.substitute_power(d).truncate(T)


# ----------------------------------------------------------------------
# eigenforms
# ----------------------------------------------------------------------
def _prime_power_split(n: int):
    """Smallest prime factor ``p`` of n and the full power ``p^e`` dividing n."""
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n, n
    pe = 1
    while n % p == 0:
        n //= p
        pe *= p
    return p, pe


@dataclass(frozen=True)
class Eigenform:
    """Normalized weight-two Hecke eigenform given by ``b(1..T)``."""

    coefficients: tuple
    level: int | None = None
    checks: tuple = field(default=(), compare=False)

    @property
    def truncation(self) -> int:
        return len(self.coefficients)

    def b(self, n: int) -> int:
        if n < 1:
            return 0
        if n > self.truncation:
            raise IndexError(f"b({n}) is beyond the supplied range {self.truncation}")
        return self.coefficients[n - 1]

    def as_qseries(self, T: int | None = None) -> QSeries:
        T = self.truncation if T is None else T
        if T > self.truncation:
            raise IndexError(f"only {self.truncation} coefficients available")
        return QSeries([0] + list(self.coefficients[:T]), 0, T)

    def is_good_prime(self, p: int) -> bool | None:
        if self.level is None:
            return None
        return self.level % p != 0


def verify_eigenform(b: dict, level: int | None) -> list[str]:
    """Check normalization, multiplicativity and the prime-power recursions."""
    T = max(b)
    if b.get(1) != 1:
        raise MissingNormalization(f"b(1) = {b.get(1)}, expected 1")
    notes = []
    for n in range(2, T + 1):
        p, pe = _prime_power_split(n)
        if pe != n and b[n] != b[pe] * b[n // pe]:
            raise HeckeInconsistency(
                f"multiplicativity fails: b({n}) = {b[n]} but b({pe}) b({n // pe}) = {b[pe] * b[n // pe]}"
            )
    p = 2
    while p * p <= T:
        if is_prime(p):
            powers = []
            q = p
            while q <= T:
                powers.append(q)
                q *= p
            seq = [1] + [b[q] for q in powers]
            good = all(
                seq[k + 1] == seq[1] * seq[k] - p * seq[k - 1] for k in range(1, len(seq) - 1)
            )
            bad = all(seq[k] == seq[1] ** k for k in range(len(seq)))
            if level is None:
                kind = "good" if good else "bad" if bad else None
            else:
                kind = "bad" if level % p == 0 else "good"
            if kind == "good" and not good:
                k = next(k for k in range(1, len(seq) - 1) if seq[k + 1] != seq[1] * seq[k] - p * seq[k - 1])
                raise HeckeInconsistency(
                    f"b({p}^{k + 1}) = {seq[k + 1]} violates b(p)b(p^k) - p b(p^(k-1)) = "
                    f"{seq[1] * seq[k] - p * seq[k - 1]}"
                )
            if kind == "bad" and not bad:
                raise HeckeInconsistency(f"b({p}^k) is not b({p})^k at a prime dividing the level")
            if kind is None:
                raise HeckeInconsistency(f"prime {p} fits neither Hecke recursion")
            if kind == "good" and seq[1] == 0:
                for m in range(1, (len(seq) - 1) // 2 + 1):
                    if seq[2 * m] != (-p) ** m:
                        raise HeckeInconsistency(
                            f"b({p}^{2 * m}) = {seq[2 * m]}, expected (-{p})^{m}"
                        )
                notes.append(f"p={p}: b(p)=0, b(p^2m)=(-p)^m verified")
        p += 1
    return notes


def eigenform_from_series(series: QSeries, level: int | None = None, T: int | None = None) -> Eigenform:
    T = series.truncation if T is None else min(T, series.truncation)
    b = {}
    for n in range(1, T + 1):
        c = series[n]
        if c.denominator != 1:
            raise ParseError(f"b({n}) = {c} is not an integer")
        b[n] = int(c)
    notes = verify_eigenform(b, level)
    return Eigenform(tuple(b[n] for n in range(1, T + 1)), level, tuple(notes))


def load_eigenform(source, level: int | None = None) -> Eigenform:
    """Read ``n b(n)`` lines (ascending from ``1 1``); ``level N`` lines are allowed."""
    if isinstance(source, (str, Path)) and Path(source).exists():
        path = Path(source)
        text = path.read_text(encoding="utf-8")
    else:
        path, text = None, source if isinstance(source, str) else "".join(source)
    b = {}
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "level":
            level = int(parts[1])
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'n b(n)', got {line!r}", path, lineno)
        try:
            n, bn = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer entry {line!r}", path, lineno) from None
        if n != last + 1:
            raise ParseError(f"expected n = {last + 1}, got {n}", path, lineno)
        b[n] = bn
        last = n
    if not b:
        raise MissingNormalization("no coefficients supplied")
    notes = verify_eigenform(b, level)
    return Eigenform(tuple(b[n] for n in range(1, last + 1)), level, tuple(notes))


def eichler_integral(f, T: int | None = None) -> QSeries:
    """``sum b(n)/n q^n`` for an eigenform or a series with zero constant term."""
    if isinstance(f, Eigenform):
        f = f.as_qseries(T)
    elif T is not None:
        f = f.truncate(T)
    return formal_integral(f)


# ----------------------------------------------------------------------
# the level-32 cast
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Builtin32:
    g: QSeries
    L: QSeries
    L2: QSeries
    W1: QSeries
    W2: QSeries
    curve: object
    truncation: int

    def eigenform(self) -> Eigenform:
        return eigenform_from_series(self.g, level=32)


def builtin_32(T: int) -> Builtin32:
    """g, L, L(2 tau), W1 = -g L(2 tau), W2 = E4(4 tau)/g, all through ``q^T``."""
    from .weierstrass import CurveModel

    g_pad = eta_quotient_expand(G_SPEC, T + 2)
    L = eta_quotient_expand(L_SPEC, T // 2 + 1)
    L2 = L.substitute_power(2).truncate(T + 1)
    W1 = (-(g_pad * L2)).truncate(T)
    E4_4 = eisenstein_qexp(4, (T + 1) // 4 + 1).substitute_power(4).truncate(T + 1)
    W2 = (E4_4 / g_pad).truncate(T)
    return Builtin32(
        g=g_pad.truncate(T),
        L=L.truncate(T),
        L2=L2.truncate(T),
        W1=W1,
        W2=W2,
        curve=CurveModel(Fraction(-16), Fraction(0)),
        truncation=T,
    )
