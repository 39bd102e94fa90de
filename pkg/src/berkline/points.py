"""Concrete points of the Berkovich affine line over Z.

A point is a multiplicative seminorm on Z[t], presented by an element of
a concrete valuation field: a rational with the trivial norm, an
algebraic number given by its minimal polynomial, the generic trivially
normed point, a finite-field residue, a real or complex number with a
power of the Euclidean norm (the complex plane folded onto the closed
upper half plane), or a p-adic number with a power of the p-adic norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import magnitude as mag
from . import polynomials as poly
from .fields import (Fp, PadicNumber, Q0, Qpw, Rv, abs_value, is_prime,
                     padic_from_json, padic_from_rational, padic_zero)

# Absolute tolerance used when comparing float-derived complex points.
COMPLEX_EQ_TOL = 1e-9


# ---------------------------------------------------------------------------
# Point variants
# ---------------------------------------------------------------------------


class Point:
    """Marker base class; concrete variants are the dataclasses below."""


@dataclass(frozen=True)
class TrivialRational(Point):
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))


@dataclass(frozen=True)
class TrivialAlgebraic(Point):
    """Algebraic number under the trivial norm, by its minimal polynomial.

    The polynomial is stored primitive with positive leading coefficient.
    Irreducibility over Q is the caller's responsibility for degree >= 4;
    lower degrees are checked for rational roots.
    """

    minpoly: tuple

    def __post_init__(self):
        mp = poly.primitive_part(poly.normalize(self.minpoly))
        if poly.degree(mp) < 2:
            raise ValueError("use trivial_algebraic() which handles degree 1")
        if poly.degree(mp) <= 3 and _has_rational_root(mp):
            raise ValueError("minimal polynomial is reducible")
        object.__setattr__(self, "minpoly", mp)


@dataclass(frozen=True)
class GenericTrivial(Point):
    """The class of the variable t in Z(t) with the trivial norm."""


@dataclass(frozen=True)
class TrivialFinite(Point):
    p: int
    residue: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "residue", self.residue % self.p)


@dataclass(frozen=True)
class RealPower(Point):
    upsilon: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "upsilon", Fraction(self.upsilon))
        object.__setattr__(self, "t", Fraction(self.t))
        if not 0 < self.upsilon <= 1:
            raise ValueError("upsilon must lie in (0, 1]")


@dataclass(frozen=True)
class ComplexFold(Point):
    """Gaussian rational folded onto the closed upper half plane."""

    upsilon: Fraction
    re: Fraction
    im: Fraction
    approx: bool = False  # True when derived from floating-point roots

    def __post_init__(self):
        object.__setattr__(self, "upsilon", Fraction(self.upsilon))
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))
        if not 0 < self.upsilon <= 1:
            raise ValueError("upsilon must lie in (0, 1]")
        if self.im < 0:
            raise ValueError("use complex_fold() to fold into the upper half plane")


@dataclass(frozen=True)
class PadicPower(Point):
    p: int
    omega: Fraction
    s: PadicNumber

    def __post_init__(self):
        object.__setattr__(self, "omega", Fraction(self.omega))
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.s.p != self.p:
            raise ValueError("element prime differs from point prime")


def _has_rational_root(p: poly.IntPoly) -> bool:
    lead, const = p[-1], p[0]
    if const == 0:
        return True
    for dn in _divisors(abs(const)):
        for dd in _divisors(abs(lead)):
            for num in (dn, -dn):
                if poly.eval_fraction(p, Fraction(num, dd)) == 0:
                    return True
    return False


def _divisors(n: int) -> list:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return out


def trivial_algebraic(minpoly) -> Point:
    """Build the trivially normed algebraic point, degree 1 collapsing to
    a rational point."""
    mp = poly.primitive_part(poly.normalize(minpoly))
    if poly.is_zero(mp) or poly.degree(mp) == 0:
        raise ValueError("minimal polynomial must have degree >= 1")
    if poly.degree(mp) == 1:
        return TrivialRational(Fraction(-mp[0], mp[1]))
    return TrivialAlgebraic(mp)


def complex_fold(upsilon, z_re, z_im, approx: bool = False) -> Point:
    """Fold z into the closed upper half plane; real z becomes a RealPower."""
    z_re, z_im = Fraction(z_re), Fraction(z_im)
    if z_im == 0:
        return RealPower(Fraction(upsilon), z_re)
    if z_im < 0:
        z_im = -z_im
    return ComplexFold(Fraction(upsilon), z_re, z_im, approx)


def padic_point(p: int, omega, s, precision: int = 32) -> PadicPower:
    if not isinstance(s, PadicNumber):
        s = padic_from_rational(p, Fraction(s), precision)
    return PadicPower(p, Fraction(omega), s)


# ---------------------------------------------------------------------------
# Base points (the fibers over M(Z_1))
# ---------------------------------------------------------------------------


class BasePoint:
    pass


@dataclass(frozen=True)
class ZeroQ(BasePoint):
    pass


@dataclass(frozen=True)
class ZeroR(BasePoint):
    upsilon: Fraction

    def __post_init__(self):
        object.__setattr__(self, "upsilon", Fraction(self.upsilon))


@dataclass(frozen=True)
class ZeroP(BasePoint):
    p: int
    omega: Fraction

    def __post_init__(self):
        object.__setattr__(self, "omega", Fraction(self.omega))


@dataclass(frozen=True)
class ZeroPInf(BasePoint):
    p: int


def point_from_base(bp: BasePoint) -> Point:
    """The zero element of the base field, as a full point."""
    if isinstance(bp, ZeroQ):
        return TrivialRational(Fraction(0))
    if isinstance(bp, ZeroR):
        return RealPower(bp.upsilon, Fraction(0))
    if isinstance(bp, ZeroP):
        return PadicPower(bp.p, bp.omega, padic_zero(bp.p))
    if isinstance(bp, ZeroPInf):
        return TrivialFinite(bp.p, 0)
    raise TypeError(f"not a base point: {bp!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def eval_point(x: Point, p: poly.IntPoly) -> mag.Magnitude:
    """The seminorm of the integer polynomial p at the point x."""
    p = poly.normalize(p)
    if isinstance(x, TrivialRational):
        return mag.ZERO if poly.eval_fraction(p, x.r) == 0 else mag.ONE
    if isinstance(x, TrivialAlgebraic):
        return mag.ZERO if poly.divides(x.minpoly, p) else mag.ONE
    if isinstance(x, GenericTrivial):
        return mag.ZERO if poly.is_zero(p) else mag.ONE
    if isinstance(x, TrivialFinite):
        return mag.ZERO if poly.eval_mod(p, x.residue, x.p) == 0 else mag.ONE
    if isinstance(x, RealPower):
        return abs_value(Rv(x.upsilon), poly.eval_fraction(p, x.t))
    if isinstance(x, ComplexFold):
        re_v, im_v = poly.eval_gauss(p, x.re, x.im)
        sq = re_v * re_v + im_v * im_v
        if sq == 0:
            return mag.ZERO
        # |p(z)| ** upsilon == (|p(z)| ** 2) ** (upsilon / 2), kept exact.
        return mag.mag_pow(mag.from_rational(sq), x.upsilon / 2)
    if isinstance(x, PadicPower):
        if poly.is_zero(p):
            return mag.ZERO
        acc = padic_from_rational(x.p, p[-1], x.s.prec)
        for c in reversed(p[:-1]):
            acc = acc * x.s + padic_from_rational(x.p, c, x.s.prec)
        return abs_value(Qpw(x.p, x.omega), acc)
    raise TypeError(f"not a point: {x!r}")


def abs_point(x: Point) -> mag.Magnitude:
    """|x| = the seminorm of the polynomial t."""
    return eval_point(x, poly.T)


def is_ultrametric(x: Point) -> bool:
    return not isinstance(x, (RealPower, ComplexFold))


def base_point(x: Point) -> BasePoint:
    """Restriction of the seminorm to the constants."""
    if isinstance(x, (TrivialRational, TrivialAlgebraic, GenericTrivial)):
        return ZeroQ()
    if isinstance(x, TrivialFinite):
        return ZeroPInf(x.p)
    if isinstance(x, RealPower):
        return ZeroR(x.upsilon)
    if isinstance(x, ComplexFold):
        return ZeroR(x.upsilon)
    if isinstance(x, PadicPower):
        return ZeroP(x.p, x.omega)
    raise TypeError(f"not a point: {x!r}")


# ---------------------------------------------------------------------------
# Equality
# ---------------------------------------------------------------------------

_WITNESS_POLYS = [(2,), (3,), (5,), poly.T, (1, 1), (-1, 1), (1, 0, 1)]


@dataclass(frozen=True)
class EqualityReport:
    equal: bool
    certain: bool
    witness: Optional[tuple] = None


def points_equal_report(x: Point, y: Point) -> EqualityReport:
    """Whether two presentations define the same seminorm.

    p-adic equality is decided to the common known precision and flagged
    uncertain when it holds only up to that precision; float-derived
    complex points compare with an absolute tolerance.
    """
    if type(x) is not type(y):
        return EqualityReport(False, True, _find_witness(x, y))
    if isinstance(x, PadicPower):
        if (x.p, x.omega) != (y.p, y.omega):
            return EqualityReport(False, True, _find_witness(x, y))
        equal, certain = x.s.equals(y.s)
        return EqualityReport(equal, certain, None if equal else _find_witness(x, y))
    if isinstance(x, ComplexFold):
        if x.upsilon != y.upsilon:
            return EqualityReport(False, True, _find_witness(x, y))
        if (x.re, x.im) == (y.re, y.im):
            return EqualityReport(True, not (x.approx or y.approx))
        if x.approx or y.approx:
            d2 = float((x.re - y.re) ** 2 + (x.im - y.im) ** 2)
            if d2 <= COMPLEX_EQ_TOL ** 2:
                return EqualityReport(True, False)
        return EqualityReport(False, True, _find_witness(x, y))
    eq = x == y
    return EqualityReport(eq, True, None if eq else _find_witness(x, y))


def points_equal(x: Point, y: Point) -> bool:
    return points_equal_report(x, y).equal


def _find_witness(x: Point, y: Point) -> Optional[tuple]:
    for q in _WITNESS_POLYS:
        try:
            a, b = eval_point(x, q), eval_point(y, q)
        except Exception:
            continue
        try:
            if mag.mag_cmp(a, b) != 0:
                return q
        except mag.PrecisionExhausted:
            continue
    return None


# ---------------------------------------------------------------------------
# Membership in balls and basic open sets
# ---------------------------------------------------------------------------


def in_ball(x: Point, radius) -> bool:
    """Whether |x| <= radius (the closed ball of Eq.-style radius M)."""
    radius = Fraction(radius)
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return mag.mag_cmp(abs_point(x), mag.from_rational(radius)) <= 0


@dataclass(frozen=True)
class OpenConstraint:
    """Strict constraint |p(x)| < bound or |p(x)| > bound."""

    p: tuple
    cmp: str  # "lt" | "gt"
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", poly.normalize(self.p))
        object.__setattr__(self, "bound", Fraction(self.bound))
        if self.cmp not in ("lt", "gt"):
            raise ValueError("cmp must be 'lt' or 'gt'")
        if self.bound <= 0:
            raise ValueError("bound must be positive")


def in_open_set(x: Point, constraints) -> bool:
    for c in constraints:
        value = eval_point(x, c.p)
        sign = mag.mag_cmp(value, mag.from_rational(c.bound))
        if c.cmp == "lt" and sign >= 0:
            return False
        if c.cmp == "gt" and sign <= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def point_to_json(x: Point) -> dict:
    if isinstance(x, TrivialRational):
        return {"kind": "trivial-rational", "r": str(x.r)}
    if isinstance(x, TrivialAlgebraic):
        return {"kind": "trivial-algebraic", "minpoly": list(x.minpoly)}
    if isinstance(x, GenericTrivial):
        return {"kind": "generic-trivial"}
    if isinstance(x, TrivialFinite):
        return {"kind": "trivial-finite", "p": x.p, "residue": x.residue}
    if isinstance(x, RealPower):
        return {"kind": "real-power", "upsilon": str(x.upsilon), "t": str(x.t)}
    if isinstance(x, ComplexFold):
        return {"kind": "complex-fold", "upsilon": str(x.upsilon),
                "re": str(x.re), "im": str(x.im), "approx": x.approx}
    if isinstance(x, PadicPower):
        return {"kind": "padic-power", "p": x.p, "omega": str(x.omega),
                "s": x.s.to_json()}
    raise TypeError(f"not a point: {x!r}")


def point_from_json(doc: dict, precision: int = 32) -> Point:
    kind = doc.get("kind")
    if kind == "trivial-rational":
        return TrivialRational(Fraction(doc["r"]))
    if kind == "trivial-algebraic":
        return trivial_algebraic(tuple(doc["minpoly"]))
    if kind == "generic-trivial":
        return GenericTrivial()
    if kind == "trivial-finite":
        return TrivialFinite(doc["p"], doc["residue"])
    if kind == "real-power":
        return RealPower(Fraction(doc["upsilon"]), Fraction(doc["t"]))
    if kind == "complex-fold":
        return complex_fold(Fraction(doc["upsilon"]), Fraction(doc["re"]),
                            Fraction(doc["im"]), doc.get("approx", False))
    if kind == "padic-power":
        s = doc["s"]
        if isinstance(s, (str, int)):
            s = padic_from_rational(doc["p"], Fraction(s), precision)
        else:
            s = padic_from_json(s, precision)
        return PadicPower(doc["p"], Fraction(doc["omega"]), s)
    raise ValueError(f"unknown point kind {kind!r}")


def base_to_json(bp: BasePoint) -> dict:
    if isinstance(bp, ZeroQ):
        return {"kind": "zero-q"}
    if isinstance(bp, ZeroR):
        return {"kind": "zero-r", "upsilon": str(bp.upsilon)}
    if isinstance(bp, ZeroP):
        return {"kind": "zero-p", "p": bp.p, "omega": str(bp.omega)}
    if isinstance(bp, ZeroPInf):
        return {"kind": "zero-p-inf", "p": bp.p}
    raise TypeError(f"not a base point: {bp!r}")
