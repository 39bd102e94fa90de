"""Minimal complete valuation fields and exact p-adic numbers.

The minimal fields come in four families: the rationals with the trivial
norm, the reals with a power of the Euclidean norm, the p-adics with a
power of the p-adic norm, and the prime fields with the trivial norm.
Field elements are rationals (trivial and real branches), PadicNumber
values (p-adic branch) or residues (finite branch).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import magnitude as mag
from .errors import DivisorCollision, IndeterminateValuation

DEFAULT_PRECISION = 32


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_upto(n: int) -> list:
    return [p for p in range(2, n + 1) if is_prime(p)]


def nth_prime(n: int) -> int:
    """1-indexed: nth_prime(1) == 2."""
    count, cand = 0, 1
    while count < n:
        cand += 1
        if is_prime(cand):
            count += 1
    return cand


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(q, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    q = Fraction(q)
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


# ---------------------------------------------------------------------------
# Field tags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Q0:
    """The rationals with the trivial norm."""


@dataclass(frozen=True)
class Rv:
    """The reals with the Euclidean norm raised to upsilon in (0, 1]."""

    upsilon: Fraction

    def __post_init__(self):
        object.__setattr__(self, "upsilon", Fraction(self.upsilon))
        if not 0 < self.upsilon <= 1:
            raise ValueError("upsilon must lie in (0, 1]")


@dataclass(frozen=True)
class Qpw:
    """The p-adics with the p-adic norm raised to omega > 0."""

    p: int
    omega: Fraction

    def __post_init__(self):
        object.__setattr__(self, "omega", Fraction(self.omega))
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.omega <= 0:
            raise ValueError("omega must be positive")


@dataclass(frozen=True)
class Fp:
    """The prime field Z/pZ with the trivial norm."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


MinimalFieldTag = Union[Q0, Rv, Qpw, Fp]


# ---------------------------------------------------------------------------
# p-adic numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PadicNumber:
    """An element of Q_p known to finite precision.

    The value is p**valuation * unit with the unit coprime to p and known
    modulo p**prec.  Exact zero has valuation None.  When the number was
    built from a rational, the rational is kept so that arithmetic on such
    values never loses digits.
    """

    p: int
    valuation: Optional[int]
    unit: int
    prec: int
    rational: Optional[Fraction] = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    @property
    def is_exact(self) -> bool:
        return self.rational is not None

    def _require_same_prime(self, other: "PadicNumber"):
        if self.p != other.p:
            raise ValueError("mismatched primes")

    def __str__(self):
        if self.is_zero:
            return "0"
        return f"{self.p}^{self.valuation} * ({self.unit} mod {self.p}^{self.prec})"

    def to_json(self) -> dict:
        doc = {"p": self.p, "valuation": self.valuation, "unit": self.unit, "prec": self.prec}
        if self.rational is not None:
            doc["rational"] = str(self.rational)
        return doc

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "PadicNumber") -> "PadicNumber":
        self._require_same_prime(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.is_exact and other.is_exact:
            return padic_from_rational(self.p, self.rational + other.rational,
                                       min(self.prec, other.prec))
        p = self.p
        n = min(self.prec, other.prec)
        va, vb = self.valuation, other.valuation
        lo = min(va, vb)
        mod = p ** n
        s = (self.unit * pow(p, va - lo, mod) + other.unit * pow(p, vb - lo, mod)) % mod
        if s == 0:
            raise IndeterminateValuation(
                f"cancellation exceeds the {n} known digits at p={p}")
        drop = vp_int(s, p)
        return PadicNumber(p, lo + drop, (s // p ** drop) % p ** (n - drop), n - drop)

    def __neg__(self) -> "PadicNumber":
        if self.is_zero:
            return self
        return PadicNumber(self.p, self.valuation,
                           (-self.unit) % self.p ** self.prec, self.prec,
                           None if self.rational is None else -self.rational)

    def __sub__(self, other: "PadicNumber") -> "PadicNumber":
        return self + (-other)

    def __mul__(self, other: "PadicNumber") -> "PadicNumber":
        self._require_same_prime(other)
        if self.is_zero or other.is_zero:
            return padic_zero(self.p)
        if self.is_exact and other.is_exact:
            return padic_from_rational(self.p, self.rational * other.rational,
                                       min(self.prec, other.prec))
        n = min(self.prec, other.prec)
        return PadicNumber(self.p, self.valuation + other.valuation,
                           (self.unit * other.unit) % self.p ** n, n)

    def inverse(self) -> "PadicNumber":
        if self.is_zero:
            raise ZeroDivisionError("inverse of p-adic zero")
        if self.is_exact:
            return padic_from_rational(self.p, 1 / self.rational, self.prec)
        m = self.p ** self.prec
        return PadicNumber(self.p, -self.valuation, pow(self.unit, -1, m), self.prec)

    def equals(self, other: "PadicNumber") -> tuple:
        """(equal, certain): comparison to the common known precision."""
        self._require_same_prime(other)
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero, True
        if self.valuation != other.valuation:
            return False, True
        n = min(self.prec, other.prec)
        same = (self.unit - other.unit) % self.p ** n == 0
        if self.is_exact and other.is_exact:
            return self.rational == other.rational, True
        return same, not same


def padic_zero(p: int) -> PadicNumber:
    return PadicNumber(p, None, 0, DEFAULT_PRECISION, Fraction(0))


def padic_from_rational(p: int, q, n: int = DEFAULT_PRECISION) -> PadicNumber:
    """Image of the rational q in Q_p with the unit known mod p**n."""
    q = Fraction(q)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if q == 0:
        return padic_zero(p)
    v = vp(q, p)
    num = q.numerator // p ** vp_int(q.numerator, p)
    den = q.denominator // p ** vp_int(q.denominator, p)
    mod = p ** n
    unit = num % mod * pow(den % mod, -1, mod) % mod
    return PadicNumber(p, v, unit, n, q)


def padic_from_json(doc: dict, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    if isinstance(doc, (str, int)):
        raise TypeError("expected an object")
    if "rational" in doc:
        return padic_from_rational(doc["p"], Fraction(doc["rational"]),
                                   doc.get("prec", precision))
    if doc.get("valuation") is None:
        return padic_zero(doc["p"])
    return PadicNumber(doc["p"], doc["valuation"], doc["unit"], doc.get("prec", precision))


# ---------------------------------------------------------------------------
# Absolute values
# ---------------------------------------------------------------------------


def abs_value(tag: MinimalFieldTag, x) -> mag.Magnitude:
    """The field's norm of x, as a Magnitude.

    Trivially-normed fields send every nonzero element to 1; the real
    branch returns |x| ** upsilon exactly for rational x; the p-adic
    branch returns p ** (-omega * v(x)).
    """
    if isinstance(tag, Q0):
        return mag.ZERO if Fraction(x) == 0 else mag.ONE
    if isinstance(tag, Fp):
        return mag.ZERO if x % tag.p == 0 else mag.ONE
    if isinstance(tag, Rv):
        x = Fraction(x)
        if x == 0:
            return mag.ZERO
        return mag.mag_pow(mag.from_rational(abs(x)), tag.upsilon)
    if isinstance(tag, Qpw):
        if not isinstance(x, PadicNumber):
            x = padic_from_rational(tag.p, x)
        if x.p != tag.p:
            raise ValueError("element prime differs from field prime")
        if x.is_zero:
            return mag.ZERO
        return mag.exp_mag(tag.p, -tag.omega * x.valuation)
    raise TypeError(f"unknown field tag {tag!r}")


def residue_bracket(q: int, m: int, n: int) -> int:
    """The residue r in Z/qZ with n*r = m, for coprime m and n."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    from math import gcd

    if gcd(m, n) != 1:
        raise ValueError("m and n must be coprime")
    if n % q == 0:
        raise DivisorCollision(f"{q} divides the denominator {n}")
    return m % q * pow(n % q, -1, q) % q
