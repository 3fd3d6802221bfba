"""Exact truncated Laurent series with rational coefficients.

A :class:`QSeries` stores the coefficients from ``min_exponent`` up to
``truncation``; coefficients above the truncation are unknown, never zero.
Every operation returns the largest truncation it can vouch for.  The
variable is just "q" by convention: the same class carries series in the
Weierstrass variable ``z`` or the formal-group parameter ``t``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping

from .errors import NonUnitLeadingTerm, NonzeroConstantTerm, ParseError
from .exactnum import INF, as_fraction, valuation

try:  # GMP multiplication makes the packed products much faster
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

__all__ = [
    "QSeries",
    "compose_inner",
    "d_operator",
    "formal_integral",
    "series_mul",
    "series_reversion",
    "u_operator",
    "v_operator",
]

_SCHOOLBOOK_CUTOFF = 24


# ----------------------------------------------------------------------
# dense coefficient-list kernels
# ----------------------------------------------------------------------
def _int_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two integer lists."""
    square = a is b
    a = a[:n]
    b = a if square else b[:n]
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return [0] * n
    if min(la, lb) <= _SCHOOLBOOK_CUTOFF:
        out = [0] * min(n, la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b[: len(out) - i]):
                    out[i + j] += x * y
        return out + [0] * (n - len(out))
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if ma == 0 or mb == 0:
        return [0] * n
    # Kronecker substitution: evaluate at 2**k with signed digits offset by 2**(k-1)
    k = (ma * mb * min(la, lb)).bit_length() + 2
    nb = (k + 7) // 8
    k = 8 * nb
    half = 1 << (k - 1)
    half_bytes = half.to_bytes(nb, "little")

    def pack(xs):
        raw = b"".join((x + half).to_bytes(nb, "little") for x in xs)
        bias = int.from_bytes(half_bytes * len(xs), "little")
        return _mpz(int.from_bytes(raw, "little") - bias)

    prod = int(pack(a) ** 2) if square else int(pack(a) * pack(b))
    full = la + lb - 1
    prod += int.from_bytes(half_bytes * full, "little")
    raw = prod.to_bytes(nb * full + 1, "little")
    m = min(n, full)
    out = [int.from_bytes(raw[i * nb : (i + 1) * nb], "little") - half for i in range(m)]
    return out + [0] * (n - m)


def _common_form(xs: list[Fraction]) -> tuple[list[int], int]:
    den = reduce(math.lcm, (x.denominator for x in xs), 1)
    if den == 1:
        return [x.numerator for x in xs], 1
    return [x.numerator * (den // x.denominator) for x in xs], den


def _frac_mul(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    square = a is b
    a = a[:n]
    ia, da = _common_form(a)
    ib, db = (ia, da) if square else _common_form(b[:n])
    prod = _int_mul(ia, ia if square else ib, n)
    den = da * db
    if den == 1:
        return [Fraction(c) for c in prod]
    return [Fraction(c, den) for c in prod]


# ----------------------------------------------------------------------
class QSeries:
    """Truncated Laurent series ``sum a(n) q^n`` known for ``n <= truncation``."""

    __slots__ = ("min_exponent", "coeffs", "truncation")

    def __init__(self, coeffs: Iterable = (), min_exponent: int = 0, truncation: int | None = None):
        cs = [as_fraction(c) for c in coeffs]
        if truncation is None:
            truncation = min_exponent + len(cs) - 1
            if not cs:
                raise ValueError("an empty series needs an explicit truncation")
        if truncation < min_exponent:
            # nothing stored below the truncation: all known coefficients are zero
            min_exponent, cs = truncation, []
        size = truncation - min_exponent + 1
        if len(cs) < size:
            cs.extend([Fraction(0)] * (size - len(cs)))
        self.min_exponent = min_exponent
        self.coeffs = tuple(cs[:size])
        self.truncation = truncation

    # constructors -----------------------------------------------------
    @classmethod
    def from_dict(cls, terms: Mapping[int, object], truncation: int) -> "QSeries":
        terms = {e: as_fraction(c) for e, c in terms.items() if e <= truncation}
        lo = min(terms, default=truncation)
        cs = [Fraction(0)] * (truncation - lo + 1)
        for e, c in terms.items():
            cs[e - lo] = c
        return cls(cs, lo, truncation)

    @classmethod
    def monomial(cls, exponent: int, truncation: int, coeff=1) -> "QSeries":
        return cls.from_dict({exponent: coeff}, truncation)

    @classmethod
    def one(cls, truncation: int) -> "QSeries":
        return cls.monomial(0, truncation)

    # access -----------------------------------------------------------
    def __getitem__(self, n: int) -> Fraction:
        if n > self.truncation:
            raise IndexError(f"coefficient of q^{n} is beyond the truncation {self.truncation}")
        if n < self.min_exponent:
            return Fraction(0)
        return self.coeffs[n - self.min_exponent]

    def items(self):
        """Nonzero ``(exponent, coefficient)`` pairs in ascending order."""
        m = self.min_exponent
        return [(m + i, c) for i, c in enumerate(self.coeffs) if c]

    def order(self):
        """Exponent of the first nonzero coefficient (``INF`` if none is known)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.min_exponent + i
        return INF

    def _order_bound(self) -> int:
        o = self.order()
        return self.truncation + 1 if o == INF else o

    def leading_coefficient(self) -> Fraction:
        o = self.order()
        return Fraction(0) if o == INF else self[o]

    def normalized(self) -> "QSeries":
        o = self.order()
        if o == INF or o == self.min_exponent:
            return self
        return QSeries(self.coeffs[o - self.min_exponent :], o, self.truncation)

    def truncate(self, truncation: int) -> "QSeries":
        if truncation >= self.truncation:
            return self
        return QSeries(self.coeffs[: max(0, truncation - self.min_exponent + 1)], self.min_exponent, truncation)

    def as_exact(self, truncation: int) -> "QSeries":
        """Read the stored coefficients as an exact Laurent polynomial padded to ``truncation``."""
        return QSeries(self.coeffs, self.min_exponent, truncation)

    def coefficient_list(self, start: int, stop: int) -> list[Fraction]:
        """Coefficients for exponents ``start..stop`` inclusive."""
        return [self[n] for n in range(start, stop + 1)]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def ord_p(self, p: int, through: int | None = None):
        """Minimum p-adic valuation of the coefficients (through ``through``)."""
        hi = self.truncation if through is None else min(through, self.truncation)
        best = INF
        for e, c in self.items():
            if e > hi:
                break
            best = min(best, valuation(c, p))
        return best

    def first_mismatch(self, other: "QSeries", through: int | None = None):
        """Smallest exponent where the two series differ, or ``None``."""
        hi = min(self.truncation, other.truncation)
        if through is not None:
            hi = min(hi, through)
        lo = min(self.min_exponent, other.min_exponent)
        for n in range(lo, hi + 1):
            if self[n] != other[n]:
                return n
        return None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.first_mismatch(other) is None

    def __hash__(self):
        s = self.normalized()
        return hash((s.min_exponent, s.truncation, s.coeffs))

    def __repr__(self):
        terms = []
        for e, c in self.items()[:8]:
            terms.append(f"{c}*q^{e}")
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.truncation + 1}))"

    # arithmetic -------------------------------------------------------
    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.min_exponent, self.truncation)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = as_fraction(other)
            return self + QSeries([other], 0, self.truncation) if other else self
        t = min(self.truncation, other.truncation)
        lo = min(self.min_exponent, other.min_exponent, t)
        return QSeries([self[n] + other[n] for n in range(lo, t + 1)], lo, t)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, QSeries) else -as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = as_fraction(c)
        return QSeries([c * x for x in self.coeffs], self.min_exponent, self.truncation)

    def shift(self, k: int) -> "QSeries":
        """Multiply by ``q**k``."""
        return QSeries(self.coeffs, self.min_exponent + k, self.truncation + k)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        return series_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; needs a known nonzero leading coefficient."""
        s = self.normalized()
        v = s.order()
        if v == INF:
            raise ZeroDivisionError("series is zero through its truncation")
        rel = s.truncation - v
        unit = list(s.coeffs)
        inv = [1 / unit[0]]
        n = 1
        while n < rel + 1:
            n = min(2 * n, rel + 1)
            # Newton step: x <- x (2 - u x)
            ux = _frac_mul(unit, inv, n)
            corr = [-c for c in ux]
            corr[0] += 2
            inv = _frac_mul(inv, corr, n)
        return QSeries(inv, -v, -v + rel)

    def __truediv__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(1 / as_fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse().scale(other)

    def __pow__(self, k: int) -> "QSeries":
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        s = base.normalized()
        o = s.order()
        if k == 0:
            return QSeries.one(s.truncation - (0 if o == INF else o))
        result = None
        while True:
            if k & 1:
                result = s if result is None else result * s
            k >>= 1
            if not k:
                return result
            s = s * s

    # z-variable calculus -----------------------------------------------
    def derivative(self) -> "QSeries":
        """d/dz: coefficient ``n a(n)`` moves to exponent ``n - 1``."""
        m = self.min_exponent
        return QSeries([(m + i) * c for i, c in enumerate(self.coeffs)], m - 1, self.truncation - 1)

    def antiderivative(self) -> "QSeries":
        """The z-antiderivative without constant; ``z^-1`` must be absent."""
        if self.min_exponent <= -1 <= self.truncation and self[-1] != 0:
            raise NonzeroConstantTerm("z^-1 term has no Laurent antiderivative")
        m = self.min_exponent
        cs = [c / (m + i + 1) if m + i != -1 else Fraction(0) for i, c in enumerate(self.coeffs)]
        return QSeries(cs, m + 1, self.truncation + 1)

    def substitute_power(self, d: int) -> "QSeries":
        """``q -> q**d``; the truncation scales to ``d * T``."""
        terms = {d * e: c for e, c in self.items()}
        lo = d * self.min_exponent
        out = [Fraction(0)] * (d * (self.truncation - self.min_exponent) + 1)
        for e, c in terms.items():
            out[e - lo] = c
        return QSeries(out, lo, d * self.truncation)

    # serialization ----------------------------------------------------
    def to_text(self) -> str:
        lines = [f"{self.min_exponent} {self.truncation}"]
        for e, c in self.items():
            lines.append(f"{e} {c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, source=None) -> "QSeries":
        lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines()) if ln.strip()]
        if not lines:
            raise ParseError("empty series text", source)
        lineno, head = lines[0]
        try:
            lo, trunc = (int(x) for x in head.split())
        except ValueError:
            raise ParseError(f"bad header {head!r}", source, lineno) from None
        terms = {}
        for lineno, ln in lines[1:]:
            try:
                e, c = ln.split()
                terms[int(e)] = Fraction(c)
            except ValueError:
                raise ParseError(f"bad coefficient line {ln!r}", source, lineno) from None
        out = cls.from_dict(terms, trunc)
        if out.min_exponent > lo:
            out = QSeries(
                [Fraction(0)] * (out.min_exponent - lo) + list(out.coeffs), lo, trunc
            )
        return out


# ----------------------------------------------------------------------
# operations
# ----------------------------------------------------------------------
def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Exact product; known through ``min(Ta + ord b, Tb + ord a)``."""
    oa, ob = a._order_bound(), b._order_bound()
    t = min(a.truncation + ob, b.truncation + oa)
    start = oa + ob
    n = t - start + 1
    if n <= 0:
        return QSeries([], t, t)
    ca = list(a.coeffs[oa - a.min_exponent :]) if oa <= a.truncation else []
    cb = list(b.coeffs[ob - b.min_exponent :]) if ob <= b.truncation else []
    if not ca or not cb:
        return QSeries([], start, t)
    cs = _frac_mul(ca, cb if a is not b else ca, n)
    return QSeries(cs, start, t)


def u_operator(s: QSeries, p: int) -> QSeries:
    """Atkin's U: ``sum a(n) q^n -> sum a(pn) q^n``."""
    lo = -((-s.min_exponent) // p)
    hi = s.truncation // p
    return QSeries([s[p * n] for n in range(lo, hi + 1)], lo, hi)


def v_operator(s: QSeries, p: int) -> QSeries:
    """``sum a(n) q^n -> sum a(n) q^(pn)``; the truncation becomes ``p * T``."""
    return s.substitute_power(p)


def d_operator(s: QSeries) -> QSeries:
    """``q d/dq``."""
    m = s.min_exponent
    return QSeries([(m + i) * c for i, c in enumerate(s.coeffs)], m, s.truncation)


def formal_integral(s: QSeries) -> QSeries:
    """Inverse of :func:`d_operator` on series without constant term."""
    if s.min_exponent <= 0 <= s.truncation and s[0] != 0:
        raise NonzeroConstantTerm(f"constant term {s[0]} has no q d/dq preimage")
    m = s.min_exponent
    cs = [c / (m + i) if m + i != 0 else Fraction(0) for i, c in enumerate(s.coeffs)]
    return QSeries(cs, m, s.truncation)


def _horner(coeffs: list[Fraction], y: QSeries, bound: int) -> QSeries:
    """``sum coeffs[i] * y**i`` through exponent ``bound`` (y of positive order)."""
    acc = QSeries([coeffs[-1]], 0, bound)
    y = y.truncate(bound)
    for c in reversed(coeffs[:-1]):
        acc = (acc * y).truncate(bound)
        if c:
            acc = acc + QSeries([c], 0, bound)
    return acc.truncate(bound)


def compose_inner(outer: QSeries, inner: QSeries) -> QSeries:
    """Substitute ``inner`` (positive order, nonzero leading coefficient) into ``outer``.

    ``outer`` is a Laurent series in its own variable with finite pole order.
    Known through ``min(k*m0 + r, k*(T_outer + 1) - 1)`` where ``k`` is the
    order of ``inner``, ``m0`` the order of ``outer`` and ``r`` the relative
    truncation of ``inner``.
    """
    inner = inner.normalized()
    k = inner.order()
    if k == INF or k < 1:
        raise NonUnitLeadingTerm(f"inner series must have positive order, got {k}")
    r = inner.truncation - k
    outer = outer.normalized()
    m0 = outer.order()
    if m0 == INF:
        t = k * (outer.truncation + 1) - 1
        return QSeries([], t, t)
    t_out = min(k * m0 + r, k * (outer.truncation + 1) - 1)
    terms = outer.items()
    js = [e - m0 for e, _ in terms]
    stride = reduce(math.gcd, js, 0) or 1
    bound = t_out - k * m0
    imax = min((outer.truncation - m0) // stride, bound // (k * stride))
    poly = [Fraction(0)] * (imax + 1)
    for e, c in terms:
        i = (e - m0) // stride
        if i <= imax:
            poly[i] = c
    y = inner ** stride if stride > 1 else inner
    body = _horner(poly, y, bound) if bound >= 0 else QSeries([], bound, bound)
    lead = inner ** m0 if m0 != 0 else None
    result = body if lead is None else lead * body
    return result.truncate(t_out)


def series_reversion(s: QSeries) -> QSeries:
    """Compositional inverse of ``s = c1 t + ...`` by Newton iteration."""
    s = s.normalized()
    if s.order() != 1:
        raise NonUnitLeadingTerm(f"reversion needs order 1, got {s.order()}")
    top = s.truncation
    c1 = s[1]
    ds = s.derivative()
    r = QSeries([Fraction(0), 1 / c1], 0, 1)
    n = 1
    while n < top:
        n = min(2 * n, top)
        guess = r.as_exact(n)
        sr = compose_inner(s.truncate(n), guess)
        dsr = compose_inner(ds.truncate(n - 1), guess)
        resid = sr - QSeries.monomial(1, n)
        r = (guess - resid / dsr).truncate(n)
    return r.truncate(top) if r.truncation >= top else r
