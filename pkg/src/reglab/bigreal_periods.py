"""Arbitrary-precision evaluation of the period series I(j), J(j).

Values are mpmath floats wrapped with a working precision and an
evaluation-agreement certificate: every sum is evaluated at two truncation
lengths (N and N + 16) and the number of matching digits is recorded; the
truncation length is grown until the certificate covers the requested digits.
Printed digits never exceed the certificate.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Union

from mpmath import mp

from .errors import PrecisionNotReached, UnsupportedL
from .exact_series import a_coeffs, b_coeffs, eisenstein_q_expansion

SIGN_POLICY = "magnitudes only; sign left unresolved"

_MAX_ROUNDS = 8


def _digits_of_bits(bits: int) -> int:
    return int(bits * 0.30102999566398)


class BigReal:
    """A real value at a working precision, capped by an agreement certificate."""

    __slots__ = ("value", "precision", "agreement_certificate")

    def __init__(self, value, precision: int, agreement_certificate: Union[int, None] = None):
        self.value = mp.mpf(value) if not hasattr(value, "_mpf_") else value
        self.precision = int(precision)
        if agreement_certificate is None:
            agreement_certificate = _digits_of_bits(self.precision)
        self.agreement_certificate = int(agreement_certificate)

    def to_decimal(self, digits: Union[int, None] = None) -> str:
        cap = min(self.agreement_certificate, _digits_of_bits(self.precision))
        n = cap if digits is None else min(digits, cap)
        return mp.nstr(self.value, max(n, 1), strip_zeros=False)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return self.to_decimal()

    def __repr__(self) -> str:
        return "BigReal({}, prec={}, certified={})".format(
            self.to_decimal(), self.precision, self.agreement_certificate)


class BigComplex:
    """Complex companion of BigReal; same precision and certificate bookkeeping."""

    __slots__ = ("value", "precision", "agreement_certificate")

    def __init__(self, value, precision: int, agreement_certificate: Union[int, None] = None):
        self.value = mp.mpc(value)
        self.precision = int(precision)
        if agreement_certificate is None:
            agreement_certificate = _digits_of_bits(self.precision)
        self.agreement_certificate = int(agreement_certificate)

    def __complex__(self) -> complex:
        return complex(self.value)

    def __repr__(self) -> str:
        return "BigComplex({}, prec={}, certified={})".format(
            self.value, self.precision, self.agreement_certificate)


class Constants(NamedTuple):
    pi: BigReal
    sqrt3: BigReal
    c: BigReal


class PeriodPair(NamedTuple):
    l: int
    j: int
    I: BigReal
    J: BigReal
    N_used: int


class SeriesPeriods(NamedTuple):
    delta_period: BigReal
    gamma_period: BigReal
    delta_axis: str
    gamma_axis: str
    sign_policy: str


def _require_l(l: int) -> None:
    if l < 1 or math.gcd(l, 6) != 1:
        raise UnsupportedL("need l >= 1 with gcd(l, 6) = 1, got l = {}".format(l))


def _to_mpf(fr) -> "mp.mpf":
    if isinstance(fr, Fraction):
        return mp.mpf(fr.numerator) / fr.denominator
    return mp.mpf(fr)


def constants(p: int = 128) -> Constants:
    """pi, sqrt(3), and c = exp(-2 pi / sqrt 3) = 0.026579933... at p bits."""
    if p < 64:
        raise ValueError("need p >= 64 bits")
    with mp.workprec(p + 32):
        pi = +mp.pi
        sqrt3 = mp.sqrt(3)
        c = mp.exp(-2 * pi / sqrt3)
    return Constants(BigReal(pi, p), BigReal(sqrt3, p), BigReal(c, p))


def _checkpoint_sums(a_ser, b_ser, alpha_m, N_lo: int, N_hi: int):
    """Partial sums of the four constituent series at both truncation lengths.

    a-series sums run n = 1..N, b-series sums n = 0..N-1; a single pass
    records the lower checkpoint on the way to the full sum.
    """
    c = mp.exp(-2 * mp.pi / mp.sqrt(3))
    sqrt3 = mp.sqrt(3)
    two_pi = 2 * mp.pi
    sa1 = mp.mpf(0)  # sum a_n / n c^n
    sa2 = mp.mpf(0)  # sum a_n (2 pi / (sqrt3 n) + 1/n^2) c^n
    cn = mp.mpf(1)
    checkpoints_a = {}
    for n in range(1, N_hi + 1):
        cn *= c
        an = _to_mpf(a_ser.coefficient(n))
        sa1 += an / n * cn
        sa2 += an * (two_pi / (sqrt3 * n) + mp.mpf(1) / (n * n)) * cn
        if n == N_lo:
            checkpoints_a[N_lo] = (+sa1, +sa2)
    checkpoints_a[N_hi] = (sa1, sa2)
    sb1 = mp.mpf(0)  # sum b_n (1/(n+alpha) + sqrt3/(2 pi (n+alpha)^2)) c^(n+alpha)
    sb2 = mp.mpf(0)  # sum b_n / (n+alpha) c^(n+alpha)
    cna = mp.power(c, alpha_m)
    checkpoints_b = {}
    for n in range(0, N_hi):
        bn = _to_mpf(b_ser.coefficient(n))
        na = n + alpha_m
        sb1 += bn * (1 / na + sqrt3 / (two_pi * na * na)) * cna
        sb2 += bn / na * cna
        cna *= c
        if n == N_lo - 1:
            checkpoints_b[N_lo] = (+sb1, +sb2)
    checkpoints_b[N_hi] = (sb1, sb2)
    return checkpoints_a, checkpoints_b


def _agreement_digits(lo, hi, cap: int) -> int:
    diff = abs(hi - lo)
    if diff == 0:
        return cap
    scale = max(abs(hi), mp.mpf(1) * mp.eps)
    rel = diff / scale
    if rel >= 1:
        return 0
    return min(cap, int(-mp.log10(rel)))


def eval_IJ(l: int, j: int, p: int = 128) -> PeriodPair:
    """The pair (I(j), J(j)) certified to the digits implied by p bits.

    I(j) = sum_{n>=1} a_n/n c^n
           + 3^(3j/l-3) sum_{n>=0} b_n (1/(n+a) + sqrt3/(2 pi (n+a)^2)) c^(n+a)
    J(j) = sum_{n>=1} a_n (2 pi/(sqrt3 n) + 1/n^2) c^n
           + 2 pi 3^(3j/l-7/2) sum_{n>=0} b_n/(n+a) c^(n+a)
    with a = j/l and c = exp(-2 pi / sqrt 3).
    """
    _require_l(l)
    if not 1 <= j <= l - 1:
        raise ValueError("need 1 <= j <= l - 1")
    digits = max(6, _digits_of_bits(p))
    alpha = Fraction(j, l)
    N = math.ceil(0.634 * digits) + 16
    work_bits = p + 32
    cap = _digits_of_bits(work_bits)
    for _ in range(_MAX_ROUNDS):
        N_hi = N + 16
        a_ser = a_coeffs(alpha, N_hi + 1)
        b_ser = b_coeffs(alpha, N_hi)
        with mp.workprec(work_bits):
            alpha_m = mp.mpf(j) / l
            cka, ckb = _checkpoint_sums(a_ser, b_ser, alpha_m, N, N_hi)
            ln3 = mp.ln(3)
            pref_I = mp.exp(_to_mpf(Fraction(3 * j - 3 * l, l)) * ln3)
            pref_J = 2 * mp.pi * mp.exp(_to_mpf(Fraction(6 * j - 7 * l, 2 * l)) * ln3)
            values = {}
            for n_used in (N, N_hi):
                sa1, sa2 = cka[n_used]
                sb1, sb2 = ckb[n_used]
                values[n_used] = (sa1 + pref_I * sb1, sa2 + pref_J * sb2)
            cert = min(
                _agreement_digits(values[N][0], values[N_hi][0], cap),
                _agreement_digits(values[N][1], values[N_hi][1], cap),
            )
            if cert >= digits:
                I_val, J_val = values[N_hi]
                if not (I_val > 0 and J_val > 0):
                    raise PrecisionNotReached(
                        "I({}) or J({}) failed positivity at l={}".format(j, j, l))
                return PeriodPair(l, j, BigReal(I_val, p, cert), BigReal(J_val, p, cert), N_hi)
        N += max(16, math.ceil(0.65 * digits))
    raise PrecisionNotReached(
        "series agreement stalled for (l, j) = ({}, {}) at N = {}".format(l, j, N))


def periods_from_series(l: int, j: int, p: int = 128) -> SeriesPeriods:
    """Magnitudes |period over delta| = (54 pi / l) I(j) and |period over gamma| = (27 / l) J(j).

    The delta-arch period lies on the imaginary axis and the gamma-arch
    period on the real axis; only magnitudes are reported, with the axis
    recorded alongside.
    """
    pair = eval_IJ(l, j, p)
    with mp.workprec(p + 32):
        delta = 54 * mp.pi / l * pair.I.value
        gamma = mp.mpf(27) / l * pair.J.value
    return SeriesPeriods(
        BigReal(delta, p, pair.I.agreement_certificate),
        BigReal(gamma, p, pair.J.agreement_certificate),
        "imaginary",
        "real",
        SIGN_POLICY,
    )


def eisenstein_numeric(kind: str, q, N: int = 64, p: int = 128) -> BigReal:
    """Partial sum of the exact q-expansion at a real point 0 < q < 1."""
    series = eisenstein_q_expansion(kind, N)
    with mp.workprec(p + 32):
        qm = q.value if isinstance(q, BigReal) else mp.mpf(q)
        if not 0 < qm < 1:
            raise ValueError("need 0 < q < 1")
        acc = mp.mpf(0)
        for k in range(series.truncation_order - 1, -1, -1):
            coeff = series.coefficient(k) if k >= series.valuation else Fraction(0)
            acc = acc * qm + _to_mpf(coeff)
        # crude geometric tail bound: |coeff_n| <= 9 n^3 for both kinds
        tail = 27 * mp.mpf(N) ** 3 * qm**N / (1 - qm)
        scale = abs(acc) if acc != 0 else mp.mpf(1)
        cert = _agreement_digits(acc + tail, acc, _digits_of_bits(p + 32))
        if tail / scale >= 1:
            cert = 0
    return BigReal(acc, p, cert)


def eisenstein_transform_residual(z, N: int = 80, p: int = 128) -> BigReal:
    """|27 E3b(-1/(3z)) - 3 sqrt3 i z^3 E3a(z)| for z = iy on the imaginary axis.

    Both q-values are then real: q = exp(-2 pi y) and q' = exp(-2 pi / (3y)),
    and the prefactor 3 sqrt3 i (iy)^3 collapses to the real number 3 sqrt3 y^3.
    """
    with mp.workprec(p + 32):
        zm = z.value if isinstance(z, (BigComplex, BigReal)) else mp.mpc(z)
        zm = mp.mpc(zm)
        if mp.re(zm) != 0 or mp.im(zm) <= 0:
            raise ValueError("z must lie on the positive imaginary axis")
        y = mp.im(zm)
        q_direct = mp.exp(-2 * mp.pi * y)
        q_flipped = mp.exp(-2 * mp.pi / (3 * y))
        lhs = 27 * eisenstein_numeric("E3b", BigReal(q_flipped, p + 32), N, p + 32).value
        rhs = 3 * mp.sqrt(3) * y**3 * eisenstein_numeric("E3a", BigReal(q_direct, p + 32), N, p + 32).value
        residual = abs(lhs - rhs)
    return BigReal(residual, p)
