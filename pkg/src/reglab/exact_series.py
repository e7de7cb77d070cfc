"""Exact truncated q-series arithmetic over the rationals.

Coefficients are either exact rationals or polynomials in a formal exponent
symbol alpha, so the same engine serves exact identity checks and numeric
evaluation after specializing alpha = j/l.  Includes the two weight-3
Eisenstein series on Gamma_1(3) and the fractional-power coefficient families
a_n, b_n built from them.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import ConstantTermNotOne, ZeroConstantTerm

ExactRational = Fraction


def chi3(n: int) -> int:
    """Quadratic character mod 3, with chi3(n) = 0, 1, -1 for n = 0, 1, 2 mod 3."""
    return (0, 1, -1)[n % 3]


class AlphaPolynomial:
    """Polynomial in a formal symbol alpha with exact rational coefficients."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable) -> None:
        coeffs = [Fraction(c) for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [Fraction(0)]
        self.coefficients: tuple = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_constant(self) -> bool:
        return len(self.coefficients) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.coefficients[0]

    def __call__(self, value) -> Fraction:
        value = Fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * value + c
        return acc

    def __add__(self, other):
        other = _promote(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return AlphaPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return AlphaPolynomial(-c for c in self.coefficients)

    def __sub__(self, other):
        other = _promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _promote(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _promote(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return AlphaPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, AlphaPolynomial):
            other = other.constant_value()
        return self * (Fraction(1) / Fraction(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, AlphaPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.coefficients[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.coefficients[0])
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return "AlphaPolynomial({})".format(list(self.coefficients))


def _promote(value):
    if isinstance(value, AlphaPolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return AlphaPolynomial([value])
    return NotImplemented


def formal_alpha() -> AlphaPolynomial:
    """The formal symbol alpha as a degree-1 polynomial."""
    return AlphaPolynomial([0, 1])


class ExponentParam:
    """Exponent j/l of the fractional-power series, as an exact rational."""

    __slots__ = ("value",)

    def __init__(self, value) -> None:
        value = Fraction(value)
        if not 0 < value < 1:
            raise ValueError("exponent must satisfy 0 < j/l < 1")
        self.value: Fraction = value

    @classmethod
    def from_lj(cls, l: int, j: int) -> "ExponentParam":
        if not 1 <= j <= l - 1:
            raise ValueError("need 1 <= j <= l-1")
        return cls(Fraction(j, l))

    def __eq__(self, other) -> bool:
        if isinstance(other, ExponentParam):
            return self.value == other.value
        return self.value == other

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return "ExponentParam({})".format(self.value)


Coefficient = Union[Fraction, AlphaPolynomial]


def _alpha_value(alpha) -> Coefficient:
    if isinstance(alpha, ExponentParam):
        return alpha.value
    if isinstance(alpha, AlphaPolynomial):
        return alpha
    return Fraction(alpha)


def _is_zero(c: Coefficient) -> bool:
    if isinstance(c, AlphaPolynomial):
        return c.is_constant() and c.coefficients[0] == 0
    return c == 0


class TruncatedQSeries:
    """q-expansion known for exponents < truncation_order.

    coefficients[i] multiplies q**(valuation + i); the list always has
    truncation_order - valuation entries.
    """

    __slots__ = ("valuation", "coefficients", "truncation_order")

    def __init__(self, valuation: int, coefficients: Sequence, truncation_order: int) -> None:
        coeffs = [c if isinstance(c, AlphaPolynomial) else Fraction(c) for c in coefficients]
        if valuation < 0:
            raise ValueError("valuation must be >= 0")
        if len(coeffs) != truncation_order - valuation:
            raise ValueError("need len(coefficients) == truncation_order - valuation")
        # normalize away leading zeros so valuation reports the lowest power present
        while coeffs and _is_zero(coeffs[0]):
            coeffs.pop(0)
            valuation += 1
        self.valuation: int = valuation
        self.coefficients: tuple = tuple(coeffs)
        self.truncation_order: int = truncation_order

    @classmethod
    def zero(cls, truncation_order: int) -> "TruncatedQSeries":
        return cls(truncation_order, [], truncation_order)

    @classmethod
    def one(cls, truncation_order: int) -> "TruncatedQSeries":
        return cls(0, [Fraction(1)] + [Fraction(0)] * (truncation_order - 1), truncation_order)

    def coefficient(self, n: int) -> Coefficient:
        """Coefficient of q**n; n must be below the truncation order."""
        if n >= self.truncation_order:
            raise IndexError("coefficient at or beyond truncation order")
        if n < self.valuation:
            return Fraction(0)
        return self.coefficients[n - self.valuation]

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coefficients)

    def constant_term(self) -> Coefficient:
        if self.truncation_order < 1:
            raise IndexError("series truncated before q^0")
        return self.coefficient(0)

    def truncate(self, order: int) -> "TruncatedQSeries":
        if order > self.truncation_order:
            raise ValueError("cannot extend a truncated series")
        if order <= self.valuation:
            return TruncatedQSeries(order, [], order)
        return TruncatedQSeries(self.valuation, self.coefficients[: order - self.valuation], order)

    def shift(self, k: int) -> "TruncatedQSeries":
        """Multiply by q**k (k may be negative down to -valuation)."""
        if self.valuation + k < 0:
            raise ValueError("shift would create negative exponents")
        return TruncatedQSeries(self.valuation + k, self.coefficients, self.truncation_order + k)

    def specialize(self, alpha) -> "TruncatedQSeries":
        """Evaluate every AlphaPolynomial coefficient at the given rational."""
        alpha = _alpha_value(alpha)
        coeffs = [c(alpha) if isinstance(c, AlphaPolynomial) else c for c in self.coefficients]
        return TruncatedQSeries(self.valuation, coeffs, self.truncation_order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedQSeries):
            return NotImplemented
        return (
            self.valuation == other.valuation
            and self.truncation_order == other.truncation_order
            and all(a == b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __hash__(self) -> int:
        return hash((self.valuation, self.coefficients, self.truncation_order))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedQSeries(0, [other] + [Fraction(0)] * (self.truncation_order - 1),
                                     self.truncation_order)
        if not isinstance(other, TruncatedQSeries):
            return NotImplemented
        order = min(self.truncation_order, other.truncation_order)
        val = min(self.valuation, other.valuation, order)
        coeffs = []
        for n in range(val, order):
            a = self.coefficient(n) if n < self.truncation_order else Fraction(0)
            b = other.coefficient(n) if n < other.truncation_order else Fraction(0)
            coeffs.append(a + b)
        return TruncatedQSeries(val, coeffs, order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedQSeries(self.valuation, [-c for c in self.coefficients],
                                self.truncation_order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-Fraction(other))
        if not isinstance(other, TruncatedQSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, AlphaPolynomial)):
            return TruncatedQSeries(self.valuation, [c * other for c in self.coefficients],
                                    self.truncation_order)
        if not isinstance(other, TruncatedQSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def to_json(self) -> str:
        """Exact debug dump; rational coefficients only."""
        coeffs = []
        for c in self.coefficients:
            if isinstance(c, AlphaPolynomial):
                if not c.is_constant():
                    raise TypeError("cannot dump a series with formal coefficients")
                c = c.constant_value()
            coeffs.append([str(c.numerator), str(c.denominator)])
        return json.dumps({"valuation": self.valuation, "coeffs": coeffs,
                           "order": self.truncation_order})

    @classmethod
    def from_json(cls, text: str) -> "TruncatedQSeries":
        data = json.loads(text)
        coeffs = [Fraction(int(num), int(den)) for num, den in data["coeffs"]]
        return cls(data["valuation"], coeffs, data["order"])

    def __repr__(self) -> str:
        head = ", ".join(repr(c) for c in self.coefficients[:4])
        if len(self.coefficients) > 4:
            head += ", ..."
        return "TruncatedQSeries(v={}, [{}], N={})".format(
            self.valuation, head, self.truncation_order)


def series_mul(f: TruncatedQSeries, g: TruncatedQSeries) -> TruncatedQSeries:
    """Product truncated at the smallest order either factor can certify."""
    order = min(f.truncation_order + g.valuation, g.truncation_order + f.valuation)
    val = f.valuation + g.valuation
    if val >= order:
        return TruncatedQSeries(order, [], order)
    out = [Fraction(0)] * (order - val)
    for i, a in enumerate(f.coefficients):
        if _is_zero(a):
            continue
        ei = f.valuation + i
        for j, b in enumerate(g.coefficients):
            e = ei + g.valuation + j
            if e >= order:
                break
            out[e - val] = out[e - val] + a * b
    return TruncatedQSeries(val, out, order)


def series_inverse(f: TruncatedQSeries) -> TruncatedQSeries:
    """Multiplicative inverse mod q**truncation_order."""
    if f.truncation_order < 1 or f.valuation > 0 or not f.coefficients:
        raise ZeroConstantTerm("series has no invertible constant term")
    c0 = f.coefficients[0]
    if isinstance(c0, AlphaPolynomial):
        if not c0.is_constant():
            raise ValueError("constant term must be a unit rational, not a formal polynomial")
        c0 = c0.constant_value()
    if c0 == 0:
        raise ZeroConstantTerm("series has zero constant term")
    n_terms = f.truncation_order
    inv0 = Fraction(1) / c0
    out = [inv0] + [Fraction(0)] * (n_terms - 1)
    for n in range(1, n_terms):
        acc = Fraction(0)
        for k in range(1, n + 1):
            a = f.coefficient(k)
            if _is_zero(a):
                continue
            acc = acc + a * out[n - k]
        out[n] = -inv0 * acc
    return TruncatedQSeries(0, out, n_terms)


def series_pow_rational(f: TruncatedQSeries, alpha) -> TruncatedQSeries:
    """f**alpha for a series with constant term 1.

    Uses the logarithmic-derivative recurrence
        n g_n = sum_{k=1..n} (alpha k - (n - k)) f_k g_{n-k},
    one exact O(N^2) pass with no exp/log composition.  alpha may be a
    rational, an ExponentParam, or a formal AlphaPolynomial.
    """
    if f.truncation_order < 1 or f.valuation > 0 or not f.coefficients:
        raise ConstantTermNotOne("series constant term must be 1")
    c0 = f.coefficients[0]
    if c0 != 1:
        raise ConstantTermNotOne("series constant term must be 1")
    alpha = _alpha_value(alpha)
    n_terms = f.truncation_order
    out: list = [Fraction(1)] + [Fraction(0)] * (n_terms - 1)
    for n in range(1, n_terms):
        acc = None
        for k in range(1, n + 1):
            fk = f.coefficient(k)
            if _is_zero(fk):
                continue
            term = (alpha * k - (n - k)) * fk * out[n - k]
            acc = term if acc is None else acc + term
        if acc is None:
            out[n] = Fraction(0)
        elif isinstance(acc, AlphaPolynomial):
            out[n] = acc * Fraction(1, n)
        else:
            out[n] = acc / n
    return TruncatedQSeries(0, out, n_terms)


def eisenstein_q_expansion(kind: str, N: int) -> TruncatedQSeries:
    """Weight-3 Eisenstein series on Gamma_1(3), truncated at q**N.

    E3a = 1 - 9 sum_n (sum_{k|n} chi3(k) k^2) q^n
    E3b =     sum_n (sum_{k|n} chi3(n/k) k^2) q^n
    """
    if N < 1:
        raise ValueError("need N >= 1")
    if kind not in ("E3a", "E3b"):
        raise ValueError("kind must be 'E3a' or 'E3b'")
    sums = [0] * N
    if kind == "E3a":
        for k in range(1, N):
            c = chi3(k)
            if c == 0:
                continue
            ck2 = c * k * k
            for n in range(k, N, k):
                sums[n] += ck2
        coeffs = [Fraction(1)] + [Fraction(-9 * s) for s in sums[1:]]
        return TruncatedQSeries(0, coeffs, N)
    for d in range(1, N):
        d2 = d * d
        for n in range(d, N, d):
            c = chi3(n // d)
            if c:
                sums[n] += c * d2
    if N == 1:
        return TruncatedQSeries.zero(1)
    return TruncatedQSeries(1, [Fraction(s) for s in sums[1:]], N)


@lru_cache(maxsize=32)
def _power_base(N: int) -> tuple:
    e3a = eisenstein_q_expansion("E3a", N)
    e3b = eisenstein_q_expansion("E3b", N)
    denom_inv = series_inverse(e3a + 27 * e3b)
    return e3a, e3b, denom_inv


def a_coeffs(alpha, N: int) -> TruncatedQSeries:
    """Coefficients a_n of E3b * (E3a / (E3a + 27 E3b))**alpha, order N."""
    if N < 2:
        raise ValueError("need N >= 2")
    e3a, e3b, denom_inv = _power_base(N)
    base = series_mul(e3a, denom_inv)
    return series_mul(e3b, series_pow_rational(base, alpha))


def b_coeffs(alpha, N: int) -> TruncatedQSeries:
    """Coefficients b_n of E3a * (E3b / (q (E3a + 27 E3b)))**alpha, order N."""
    if N < 2:
        raise ValueError("need N >= 2")
    e3a, e3b, denom_inv = _power_base(N + 1)
    base = series_mul(e3b.shift(-1), denom_inv)
    powed = series_pow_rational(base.truncate(N), alpha)
    return series_mul(e3a.truncate(N), powed)
