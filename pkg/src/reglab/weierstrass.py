"""Weierstrass families over Q(t): discriminant, j-invariant, Kodaira fibers.

Exact arithmetic throughout.  Finite places are squarefree monic factors of
the base polynomial ring; a factor is only accepted as a place when every
order computed at it is certified constant along its roots (f = pi^k h with
gcd(h, pi) = 1), so reducible factors like t^l - 1 behave like single points.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import IsotrivialFamily, NonIntegralEpsilon, NotMinimal, UnsupportedL

_ORD_INF = 10**9


class Polynomial:
    """Dense univariate polynomial in t over the exact rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable) -> None:
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Polynomial(c / lead for c in self.coeffs)

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dn, dd = self.degree, other.degree
        if dn < dd:
            return Polynomial([]), self
        inv_lead = Fraction(1) / other.coeffs[-1]
        quot = [Fraction(0)] * (dn - dd + 1)
        for k in range(dn - dd, -1, -1):
            c = rem[k + dd] * inv_lead
            if c != 0:
                quot[k] = c
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        return Polynomial(quot), Polynomial(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "t" if k == 1 else "t^{}".format(k)
                body = var if mag == 1 else "{}*{}".format(mag, var)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return "Polynomial({})".format(self)


def _as_poly(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial([value])
    return NotImplemented


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def multiplicity(p: Polynomial, pi: Polynomial) -> int:
    """Largest k with pi^k dividing p; p must be nonzero."""
    if p.is_zero():
        raise ValueError("multiplicity of zero polynomial is undefined")
    k = 0
    while p.degree >= pi.degree:
        q, r = divmod(p, pi)
        if not r.is_zero():
            break
        p, k = q, k + 1
    return k


def squarefree_decomposition(p: Polynomial) -> List[Tuple[Polynomial, int]]:
    """Yun decomposition: pairwise-coprime monic squarefree (factor, mult) pairs."""
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    b = p // a0
    d = (dp // a0) - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        d = (d // a) - b.derivative()
        i += 1
    return out


def split_by_multiplicity(pi: Polynomial, p: Polynomial) -> List[Tuple[Polynomial, int]]:
    """Partition squarefree pi into monic factors on which p has constant root multiplicity."""
    if p.is_zero():
        return [(pi.monic(), _ORD_INF)]
    pi = pi.monic()
    out = []
    k = 0
    while pi.degree > 0:
        d = poly_gcd(pi, p)
        exact = pi // d
        if exact.degree > 0:
            out.append((exact.monic(), k))
        pi = d
        if pi.degree > 0:
            p = p // d
        k += 1
    return out


class Place:
    """A closed point of the base: a squarefree monic factor, or infinity."""

    __slots__ = ("polynomial",)

    def __init__(self, polynomial: Union[Polynomial, None]) -> None:
        if polynomial is not None:
            if polynomial.degree < 1:
                raise ValueError("finite place needs a nonconstant polynomial")
            polynomial = polynomial.monic()
        self.polynomial = polynomial

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, polynomial: Polynomial) -> "Place":
        return cls(polynomial)

    @classmethod
    def at_point(cls, a) -> "Place":
        return cls(Polynomial([-Fraction(a), 1]))

    @property
    def is_infinity(self) -> bool:
        return self.polynomial is None

    @property
    def kind(self) -> str:
        return "Infinity" if self.is_infinity else "FinitePoint"

    @property
    def degree(self) -> int:
        return 1 if self.is_infinity else self.polynomial.degree

    def __eq__(self, other) -> bool:
        if not isinstance(other, Place):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.polynomial == other.polynomial

    def __hash__(self) -> int:
        return hash(None if self.is_infinity else self.polynomial)

    def __str__(self) -> str:
        return "infinity" if self.is_infinity else str(self.polynomial)

    def __repr__(self) -> str:
        return "Place({})".format(self)


class RationalFunction:
    """Quotient of polynomials, kept in lowest terms with a monic denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=1) -> None:
        num = _as_poly(numerator)
        den = _as_poly(denominator)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Polynomial([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading()
            if lead != 1:
                num = num * (Fraction(1) / lead)
                den = den.monic()
        self.numerator: Polynomial = num
        self.denominator: Polynomial = den

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_constant(self) -> bool:
        return self.numerator.degree <= 0 and self.denominator.degree <= 0

    def derivative(self) -> "RationalFunction":
        n, d = self.numerator, self.denominator
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x) -> Fraction:
        return self.numerator(x) / self.denominator(x)

    def __add__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.numerator * other.denominator,
                                self.denominator * other.numerator)

    def __rtruediv__(self, other):
        other = _as_ratfun(other)
        return other / self

    def __eq__(self, other) -> bool:
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.numerator == other.numerator
                and self.denominator == other.denominator)

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def ord_at(self, place: Place) -> int:
        """Certified order of vanishing at the place (poles negative)."""
        if self.is_zero():
            return _ORD_INF
        if place.is_infinity:
            return self.denominator.degree - self.numerator.degree
        pi = place.polynomial
        k_num = _certified_multiplicity(self.numerator, pi)
        k_den = _certified_multiplicity(self.denominator, pi)
        return k_num - k_den

    def __str__(self) -> str:
        if self.denominator == Polynomial([1]):
            return str(self.numerator)
        return "({}) / ({})".format(self.numerator, self.denominator)

    def __repr__(self) -> str:
        return "RationalFunction({})".format(self)


def _as_ratfun(value):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, (int, Fraction, Polynomial)):
        return RationalFunction(value)
    return NotImplemented


def _certified_multiplicity(p: Polynomial, pi: Polynomial) -> int:
    k = multiplicity(p, pi)
    cofactor = p
    for _ in range(k):
        cofactor = cofactor // pi
    if poly_gcd(cofactor, pi).degree > 0:
        raise ValueError(
            "order is not constant along the place {}; refine the factor".format(pi))
    return k


class WeierstrassFamily:
    """The data (g2, g3) of y^2 = 4x^3 - g2 x - g3 over the rational base."""

    __slots__ = ("g2", "g3", "label")

    def __init__(self, g2, g3, label: str = "") -> None:
        self.g2 = _as_ratfun(g2)
        self.g3 = _as_ratfun(g3)
        self.label = label

    def __repr__(self) -> str:
        return "WeierstrassFamily(g2={}, g3={}, label={!r})".format(self.g2, self.g3, self.label)


_EPSILON_TABLE = {"Smooth": 0, "II": 2, "III": 3, "IV": 4, "II*": 10, "III*": 9, "IV*": 8}


class KodairaFiber:
    """A classified fiber: Kodaira type, its epsilon contribution, and the place."""

    __slots__ = ("kind", "n", "place")

    def __init__(self, kind: str, n: Union[int, None], place: Place) -> None:
        if kind in ("I", "I*"):
            if n is None or n < 0 or (kind == "I" and n < 1):
                raise ValueError("type {} needs a valid index".format(kind))
        elif kind not in _EPSILON_TABLE:
            raise ValueError("unknown Kodaira type {!r}".format(kind))
        else:
            n = None
        self.kind = kind
        self.n = n
        self.place = place

    @property
    def type(self) -> str:
        if self.kind == "I":
            return "I_{}".format(self.n)
        if self.kind == "I*":
            return "I*_{}".format(self.n)
        return self.kind

    @property
    def epsilon_s(self) -> int:
        if self.kind == "I":
            return self.n
        if self.kind == "I*":
            return self.n + 6
        return _EPSILON_TABLE[self.kind]

    @property
    def is_additive(self) -> bool:
        return self.kind not in ("Smooth", "I")

    def __eq__(self, other) -> bool:
        if not isinstance(other, KodairaFiber):
            return NotImplemented
        return (self.kind, self.n, self.place) == (other.kind, other.n, other.place)

    def __hash__(self) -> int:
        return hash((self.kind, self.n, self.place))

    def __repr__(self) -> str:
        return "KodairaFiber({} at {})".format(self.type, self.place)


def example_family(l: int) -> WeierstrassFamily:
    """The family 3y^2 + x^3 + (3x + 4t^l)^2 = 0 in Weierstrass form."""
    if l < 1:
        raise ValueError("need l >= 1")
    tl = [Fraction(0)] * l
    g2 = Polynomial([108] + tl[:-1] + [-96])
    g3 = Polynomial([216] + tl[:-1] + [-288] + tl[:-1] + [64])
    return WeierstrassFamily(g2, g3, label="3y^2 + x^3 + (3x + 4t^{})^2 = 0".format(l))


def discriminant_and_j(W: WeierstrassFamily) -> Tuple[RationalFunction, RationalFunction]:
    """Delta = g2^3 - 27 g3^2 and j = 1728 g2^3 / Delta."""
    g2_cubed = W.g2 * W.g2 * W.g2
    delta = g2_cubed - 27 * (W.g3 * W.g3)
    if delta.is_zero():
        raise IsotrivialFamily("discriminant vanishes identically")
    return delta, 1728 * g2_cubed / delta


def _orders_at(W: WeierstrassFamily, delta: RationalFunction, s: Place) -> Tuple[int, int, int]:
    return W.g2.ord_at(s), W.g3.ord_at(s), delta.ord_at(s)


def classify_fiber(W: WeierstrassFamily, s: Place) -> KodairaFiber:
    """Kodaira type at s from minimalized (ord g2, ord g3, ord Delta).

    Shifting by k0 = min(floor(v4/4), floor(v6/6)) makes the local equation
    minimal in one step; for negative orders (poles, or the infinite place
    where the raw orders are those of 1/t) the same shift performs the
    standard u^4, u^6 twist.
    """
    delta, _ = discriminant_and_j(W)
    v4, v6, vd = _orders_at(W, delta, s)
    k0 = min(v4 // 4, v6 // 6)
    v4 -= 4 * k0
    v6 -= 6 * k0
    vd -= 12 * k0
    if vd == 0:
        return KodairaFiber("Smooth", None, s)
    if v4 == 0:
        return KodairaFiber("I", vd, s)
    if v6 == 1:
        return KodairaFiber("II", None, s)
    if v4 == 1 and v6 >= 2:
        return KodairaFiber("III", None, s)
    if v4 >= 2 and v6 == 2:
        return KodairaFiber("IV", None, s)
    if v4 >= 2 and v6 >= 3 and vd == 6:
        return KodairaFiber("I*", 0, s)
    if v4 == 2 and v6 == 3 and vd > 6:
        return KodairaFiber("I*", vd - 6, s)
    if v4 >= 3 and v6 == 4:
        return KodairaFiber("IV*", None, s)
    if v4 == 3 and v6 >= 5:
        return KodairaFiber("III*", None, s)
    if v4 >= 4 and v6 == 5:
        return KodairaFiber("II*", None, s)
    raise NotMinimal("orders (v4, v6, vDelta) = ({}, {}, {}) fit no minimal type".format(v4, v6, vd))


def fiber_list(W: WeierstrassFamily) -> List[KodairaFiber]:
    """All singular fibers, at uniform places plus infinity; smooth fibers omitted."""
    delta, _ = discriminant_and_j(W)
    ord_witnesses = [p for p in (W.g2.numerator, W.g2.denominator,
                                 W.g3.numerator, W.g3.denominator,
                                 delta.numerator, delta.denominator)
                     if not p.is_zero()]
    candidates: List[Polynomial] = []
    for source in (delta.numerator, delta.denominator,
                   W.g2.denominator, W.g3.denominator):
        for factor, _ in squarefree_decomposition(source):
            pieces = [factor]
            for witness in ord_witnesses:
                refined = []
                for piece in pieces:
                    refined.extend(f for f, _ in split_by_multiplicity(piece, witness))
                pieces = refined
            candidates.extend(pieces)
    seen = set()
    fibers = []
    for factor in candidates:
        place = Place.finite(factor)
        if place in seen:
            continue
        seen.add(place)
        fiber = classify_fiber(W, place)
        if fiber.kind != "Smooth":
            fibers.append(fiber)
    fiber_inf = classify_fiber(W, Place.infinity())
    if fiber_inf.kind != "Smooth":
        fibers.append(fiber_inf)
    fibers.sort(key=lambda f: (f.place.is_infinity, f.place.degree, str(f.place)))
    return fibers


def euler_epsilon(W: WeierstrassFamily) -> Tuple[int, int, int, int]:
    """(epsilon, additive fiber count, deg H^{1,0}, deg H^{0,1}).

    epsilon = (1/12) sum of epsilon_s over all fibers, each place weighted by
    its degree (number of geometric points); deg H^{1,0} = epsilon - a and
    deg H^{0,1} = -epsilon with a the number of additive fibers.
    """
    total = 0
    additive = 0
    for fiber in fiber_list(W):
        total += fiber.epsilon_s * fiber.place.degree
        if fiber.is_additive:
            additive += fiber.place.degree
    if total % 12:
        raise NonIntegralEpsilon("sum of epsilon_s is {}, not divisible by 12".format(total))
    epsilon = total // 12
    return epsilon, additive, epsilon - additive, -epsilon


def hodge_and_dims(l: int) -> dict:
    """Hodge numbers and the dimension bookkeeping of the example family."""
    if l < 1 or l % 2 == 0 or l % 3 == 0:
        raise UnsupportedL("need l >= 1 with gcd(l, 6) = 1, got l = {}".format(l))
    h20 = (l - 1) // 3
    return {
        "l": l,
        "h20": h20,
        "h11": 10 * (1 + h20),
        "h": l - 1 - h20,
        "dim_Lambda1": l - 1 - h20,
        "dim_Lambda2": h20,
        "dim_E": l - 1,
        "dim_E_rel": 2 * l - 1,
    }
