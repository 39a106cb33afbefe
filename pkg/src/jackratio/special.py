"""Signed log-domain scalars and the special functions built on them.

Large gamma-function products overflow double precision long before the
quantities of interest do, so multiplicative constants are carried as a
sign together with the log of the absolute value.  Exact-rational variants
of the Pochhammer products are provided as well; the series code prefers
those, converting to the log domain only at the very end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .partitions import Partition, normalize

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as (sign, log|value|); sign 0 encodes exact zero."""
    sign: int
    log_abs: float

    @classmethod
    def zero(cls) -> "SignedLogValue":
        return cls(0, float("-inf"))

    @classmethod
    def one(cls) -> "SignedLogValue":
        return cls(1, 0.0)

    @classmethod
    def from_float(cls, v: float) -> "SignedLogValue":
        if v == 0:
            return cls.zero()
        return cls(1 if v > 0 else -1, math.log(abs(v)))

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "SignedLogValue":
        fr = Fraction(fr)
        if fr == 0:
            return cls.zero()
        sign = 1 if fr > 0 else -1
        # big integers exceed float range, so take logs of the integer parts
        return cls(sign, _log_int(abs(fr.numerator)) - _log_int(fr.denominator))

    @classmethod
    def exp(cls, log_value: float, sign: int = 1) -> "SignedLogValue":
        return cls(sign, log_value)

    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue.zero()
        return SignedLogValue(self.sign * other.sign, self.log_abs + other.log_abs)

    def __truediv__(self, other: "SignedLogValue") -> "SignedLogValue":
        if other.sign == 0:
            raise ZeroDivisionError("signed-log division by exact zero")
        if self.sign == 0:
            return SignedLogValue.zero()
        return SignedLogValue(self.sign * other.sign, self.log_abs - other.log_abs)

    def __neg__(self) -> "SignedLogValue":
        return SignedLogValue(-self.sign, self.log_abs)

    def __add__(self, other: "SignedLogValue") -> "SignedLogValue":
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        hi, lo = (self, other) if self.log_abs >= other.log_abs else (other, self)
        diff = lo.log_abs - hi.log_abs  # <= 0
        if self.sign == other.sign:
            return SignedLogValue(self.sign, hi.log_abs + math.log1p(math.exp(diff)))
        delta = -math.expm1(diff)  # 1 - exp(diff) in [0, 1]
        if delta == 0.0:
            return SignedLogValue.zero()
        return SignedLogValue(hi.sign, hi.log_abs + math.log(delta))

    def scale_log(self, log_shift: float) -> "SignedLogValue":
        if self.sign == 0:
            return self
        return SignedLogValue(self.sign, self.log_abs + log_shift)

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)


def _log_int(n: int) -> float:
    """log of a positive integer, robust to values beyond float range."""
    if n <= 0:
        raise ValueError("need a positive integer")
    try:
        return math.log(n)
    except OverflowError:
        hi = n >> (n.bit_length() - 60)
        return math.log(hi) + (n.bit_length() - 60) * math.log(2)


def log_fraction(fr: Fraction) -> SignedLogValue:
    return SignedLogValue.from_fraction(fr)


# ---------------------------------------------------------------------------
# gamma-type functions
# ---------------------------------------------------------------------------

def _log_gamma_signed(z: float) -> SignedLogValue:
    """Gamma(z) as a signed-log value; poles at nonpositive integers rejected."""
    if z <= 0 and float(z).is_integer():
        raise ValueError(f"gamma pole at {z}")
    if z > 0:
        return SignedLogValue(1, math.lgamma(z))
    # sign alternates between consecutive negative integers
    crossings = math.floor(-z) + 1
    sign = -1 if crossings % 2 else 1
    return SignedLogValue(sign, math.lgamma(z))


def log_multivariate_gamma(beta, m: int, c) -> SignedLogValue:
    """The m-variate gamma function at parameter beta:

        pi^(m(m-1)beta/4) * prod_{i=1..m} Gamma(c - (i-1)beta/2)

    Each shifted argument must avoid the poles of Gamma.
    """
    beta = Fraction(beta)
    c = Fraction(c)
    if m < 1:
        raise ValueError("m must be >= 1")
    out = SignedLogValue.exp(float(Fraction(m * (m - 1)) * beta / 4) * math.log(math.pi))
    for i in range(1, m + 1):
        arg = c - Fraction(i - 1) * beta / 2
        if arg <= 0 and arg.denominator == 1:
            raise ValueError(f"multivariate gamma pole: argument {arg} at row {i}")
        out = out * _log_gamma_signed(float(arg))
    return out


def rising_factorial(a: Fraction, n: int) -> Fraction:
    """Exact rising factorial a (a+1) ... (a+n-1)."""
    a = Fraction(a)
    out = Fraction(1)
    for j in range(n):
        out *= a + j
    return out


def gen_pochhammer_exact(a, kappa: Partition, beta) -> Fraction:
    """Generalized Pochhammer symbol with rational arguments, exactly:

        prod_{i} rising(a - (i-1)beta/2, kappa_i)

    Returns Fraction(0) the moment any factor vanishes.
    """
    a = Fraction(a)
    beta = Fraction(beta)
    kappa = normalize(kappa)
    out = Fraction(1)
    for i, part in enumerate(kappa, start=1):
        base = a - Fraction(i - 1) * beta / 2
        for j in range(part):
            f = base + j
            if f == 0:
                return Fraction(0)
            out *= f
    return out


def gen_pochhammer(a, kappa: Partition, beta) -> SignedLogValue:
    """Generalized Pochhammer symbol as a signed-log value.

    Exact zero detection relies on exact inputs (int or Fraction); float
    arguments are accepted but compared against zero directly.
    """
    kappa = normalize(kappa)
    if isinstance(a, (int, Fraction)) and isinstance(beta, (int, Fraction)):
        return SignedLogValue.from_fraction(gen_pochhammer_exact(a, kappa, beta))
    a = float(a)
    beta_f = float(beta)
    out = SignedLogValue.one()
    for i, part in enumerate(kappa, start=1):
        base = a - (i - 1) * beta_f / 2
        for j in range(part):
            f = base + j
            if f == 0:
                return SignedLogValue.zero()
            out = out * SignedLogValue.from_float(f)
    return out


def pi_exponent(which: str, beta, n: int) -> Fraction:
    """Exponent of pi in the normalizing constants, by case on beta.

    which = "r" is the exponent in the main constant; "r1" and "r2" are the
    exponents attached to the two auxiliary integrals it is assembled from.
    """
    beta = Fraction(beta)
    if beta not in (Fraction(1), Fraction(2), Fraction(4)):
        raise ValueError("pi exponents are tabulated for beta in {1, 2, 4}")
    real = beta == 1
    if which == "r":
        return Fraction(n) * beta / 2 if real else Fraction(n - 1) * beta / 2
    if which == "r1":
        return Fraction(0) if real else -Fraction(n) * beta / 2
    if which == "r2":
        return Fraction(0) if real else -Fraction(n - 1) * beta / 2
    raise ValueError(f"unknown exponent name {which!r}")
