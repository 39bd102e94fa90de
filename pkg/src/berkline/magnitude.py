"""Values of multiplicative seminorms.

A magnitude is zero, an exact exponential ``base ** exponent`` with a
rational base > 1 (or Euler's number) and a rational exponent, or a
positive binary float carrying relative error <= 2**-40.  Exact forms are
kept exact under multiplication, powers and comparison whenever the bases
allow it; everything archimedean degrades to the float variant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from .errors import PrecisionExhausted, ZeroToZeroPower

EULER = "e"

# Relative error budget of the Approx variant.
APPROX_REL_ERROR = 2.0 ** -40

# Default interval refinement depth, in bits.
DEFAULT_CMP_BITS = 128

# Exact cross-base ordering is done with integer powers when the numbers
# involved stay below this bit size; beyond that we fall back to intervals.
_EXACT_POWER_BIT_LIMIT = 1 << 14


def _int_nthroot(n: int, k: int) -> tuple[int, bool]:
    """Integer k-th root of n >= 1, with an exactness flag."""
    if n < 2 or k == 1:
        return n, True
    hi = 1 << (-(-n.bit_length() // k) + 1)
    lo = 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo, lo ** k == n


def _reduce_base(base: Fraction, exp: Fraction) -> tuple[Fraction, Fraction]:
    """Normalize so the base is > 1 and not a perfect power."""
    if base < 1:
        base, exp = 1 / base, -exp
    num, den = base.numerator, base.denominator
    k = max(num.bit_length(), 2)
    while k >= 2:
        rn, okn = _int_nthroot(num, k)
        if okn:
            rd, okd = _int_nthroot(den, k)
            if okd and (rn > 1 or rd > 1):
                return _reduce_base(Fraction(rn, rd), exp * k)
        k -= 1
    return base, exp


@dataclass(frozen=True)
class Magnitude:
    """Zero, an exact exponential, or a positive float."""

    kind: str  # "zero" | "exp" | "approx"
    base: Union[Fraction, str, None] = None
    exp: Union[Fraction, None] = None
    value: Union[float, None] = None

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    @property
    def is_exact(self) -> bool:
        return self.kind != "approx"

    @property
    def is_one(self) -> bool:
        return self.kind == "exp" and self.exp == 0

    def to_float(self) -> float:
        if self.kind == "zero":
            return 0.0
        if self.kind == "approx":
            return self.value
        b = mpmath.e if self.base == EULER else mpmath.mpf(self.base.numerator) / self.base.denominator
        try:
            return float(mpmath.power(b, mpmath.mpf(self.exp.numerator) / self.exp.denominator))
        except OverflowError:
            return float("inf")

    def to_json(self) -> dict:
        if self.kind == "zero":
            return {"zero": True}
        if self.kind == "approx":
            return {"approx": self.value}
        return {"base": EULER if self.base == EULER else str(self.base), "exp": str(self.exp)}

    def __repr__(self):
        if self.kind == "zero":
            return "Magnitude.ZERO"
        if self.kind == "approx":
            return f"Approx({self.value!r})"
        return f"Exp({self.base}, {self.exp})"


ZERO = Magnitude("zero")
ONE = Magnitude("exp", Fraction(2), Fraction(0))


def exp_mag(base, exponent) -> Magnitude:
    """Exact magnitude ``base ** exponent`` with a normalized base."""
    exponent = Fraction(exponent)
    if exponent == 0:
        return ONE
    if base == EULER:
        return Magnitude("exp", EULER, exponent)
    base = Fraction(base)
    if base <= 0:
        raise ValueError("base must be positive")
    if base == 1:
        return ONE
    base, exponent = _reduce_base(base, exponent)
    if exponent == 0:
        return ONE
    return Magnitude("exp", base, exponent)


def approx_mag(value: float) -> Magnitude:
    if value <= 0:
        raise ValueError("approx magnitude must be positive")
    return Magnitude("approx", value=float(value))


def from_rational(q) -> Magnitude:
    """Magnitude of a nonnegative rational taken at face value."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("magnitude must be nonnegative")
    if q == 0:
        return ZERO
    return exp_mag(q, Fraction(1))


def from_json(doc: dict) -> Magnitude:
    if doc.get("zero"):
        return ZERO
    if "approx" in doc:
        return approx_mag(doc["approx"])
    base = doc["base"]
    return exp_mag(EULER if base == EULER else Fraction(base), Fraction(doc["exp"]))


def mag_mul(a: Magnitude, b: Magnitude) -> Magnitude:
    """Product of magnitudes; exact when the exact forms share a base."""
    if a.is_zero or b.is_zero:
        return ZERO
    if a.is_one:
        return b
    if b.is_one:
        return a
    if a.kind == "exp" and b.kind == "exp" and a.base == b.base:
        return exp_mag(a.base, a.exp + b.exp)
    return approx_mag(a.to_float() * b.to_float())


def mag_pow(a: Magnitude, e) -> Magnitude:
    """a ** e for rational e >= 0."""
    e = Fraction(e)
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    if a.is_zero:
        if e == 0:
            raise ZeroToZeroPower("0 ** 0 is undefined")
        return ZERO
    if e == 0:
        return ONE
    if a.kind == "exp":
        return exp_mag(a.base, a.exp * e)
    return approx_mag(a.to_float() ** float(e))


def _exact_exp_cmp(a: Magnitude, b: Magnitude) -> Union[int, None]:
    """Exact comparison of two exp magnitudes, or None if undecided here.

    With rational bases, b1**e1 and b2**e2 are compared by raising both to
    the lcm of the exponent denominators, which reduces to comparing exact
    rationals.  Guarded by a size limit to keep the integers manageable.
    """
    if a.base == b.base:
        return (a.exp > b.exp) - (a.exp < b.exp)
    if a.base == EULER or b.base == EULER:
        return None
    ell = a.exp.denominator * b.exp.denominator // _gcd(a.exp.denominator, b.exp.denominator)
    ea, eb = a.exp * ell, b.exp * ell
    import math

    bits_a = abs(ea) * math.log2(float(a.base))
    bits_b = abs(eb) * math.log2(float(b.base))
    if max(bits_a, bits_b) > _EXACT_POWER_BIT_LIMIT:
        return None
    pa = Fraction(a.base) ** int(ea)
    pb = Fraction(b.base) ** int(eb)
    return (pa > pb) - (pa < pb)


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return x


def _iv_log(mag: Magnitude):
    """mpmath interval enclosing ln(mag) for a nonzero magnitude."""
    if mag.kind == "exp":
        e = mpmath.iv.mpf(mag.exp.numerator) / mag.exp.denominator
        if mag.base == EULER:
            return e
        lb = mpmath.iv.log(mpmath.iv.mpf(mag.base.numerator) / mag.base.denominator)
        return e * lb
    v = mpmath.iv.mpf([mag.value * (1 - APPROX_REL_ERROR), mag.value * (1 + APPROX_REL_ERROR)])
    return mpmath.iv.log(v)


def mag_cmp(a: Magnitude, b: Magnitude, max_bits: int = DEFAULT_CMP_BITS) -> int:
    """Total order on magnitudes: -1, 0 or +1.

    Equality is only reported when certified: identical normalized exact
    forms, exact rational power comparison, or bitwise equal floats.
    Raises PrecisionExhausted when interval refinement up to ``max_bits``
    cannot separate the values.
    """
    if a.is_zero and b.is_zero:
        return 0
    if a.is_zero:
        return -1
    if b.is_zero:
        return 1
    if a.kind == "exp" and b.kind == "exp":
        if a == b:
            return 0
        exact = _exact_exp_cmp(a, b)
        if exact is not None:
            return exact
    if a.kind == "approx" and b.kind == "approx" and a.value == b.value:
        return 0
    bits = 64
    old_prec = mpmath.iv.prec
    try:
        while bits <= max_bits:
            mpmath.iv.prec = bits
            diff = _iv_log(a) - _iv_log(b)
            if diff > 0:
                return 1
            if diff < 0:
                return -1
            bits *= 2
    finally:
        mpmath.iv.prec = old_prec
    raise PrecisionExhausted(
        f"cannot separate {a!r} and {b!r} within {max_bits} bits"
    )


def mag_le(a: Magnitude, b: Magnitude) -> bool:
    return mag_cmp(a, b) <= 0


def mag_max(a: Magnitude, b: Magnitude) -> Magnitude:
    return a if mag_cmp(a, b) >= 0 else b


def mag_reciprocal(a: Magnitude) -> Magnitude:
    """1 / a for nonzero a; internal plumbing for bound checks."""
    if a.is_zero:
        raise ZeroDivisionError("reciprocal of zero magnitude")
    if a.kind == "exp":
        return exp_mag(a.base, -a.exp)
    return approx_mag(1.0 / a.value)


def mag_close(a: Magnitude, b: Magnitude, rel_tol: float = 2.0 ** -30) -> bool:
    """Equality up to relative tolerance; exact pairs compare exactly."""
    if a.is_exact and b.is_exact:
        try:
            return mag_cmp(a, b) == 0
        except PrecisionExhausted:
            return False
    fa, fb = a.to_float(), b.to_float()
    return abs(fa - fb) <= rel_tol * max(abs(fa), abs(fb), 1e-300)
