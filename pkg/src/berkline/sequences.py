"""Symbolic sequences of points and their convergence predicates.

A sequence descriptor names a family of points indexed by i >= 1 through
a small closed-form grammar: the prime sequence is constant or the i-th
prime, the norm exponent is c, c/i, c*i or c*q^i, and the element is a
constant rational, a constant plus a power tail r + b^i, or a residue
bracket.  Convergence to a trivially normed rational or to a finite-field
point is decided exactly on the symbolic data; a finite prefix can be
instantiated for numeric cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import magnitude as mag
from . import polynomials as poly
from .errors import DivisorCollision, UnsupportedDescriptor
from .fields import nth_prime, residue_bracket, vp
from .points import (Point, PadicPower, RealPower, TrivialFinite,
                     TrivialRational, eval_point, padic_point)

INFINITE = "inf"  # symbolic limit marker


# ---------------------------------------------------------------------------
# Grammar
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeFormula:
    """p_i: a constant prime or the i-th prime (tending to infinity)."""

    kind: str  # "const" | "nth"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("const", "nth"):
            raise ValueError(f"unknown prime formula kind {self.kind!r}")
        if self.kind == "const" and self.p is None:
            raise ValueError("constant prime formula needs p")

    def value(self, i: int) -> int:
        return self.p if self.kind == "const" else nth_prime(i)

    @property
    def tends_to_infinity(self) -> bool:
        return self.kind == "nth"


@dataclass(frozen=True)
class ExponentFormula:
    """One of c, c/i, c*i, c*q^i with positive rational c (and q)."""

    kind: str  # "const" | "over-i" | "times-i" | "geometric"
    c: Fraction
    q: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if self.q is not None:
            object.__setattr__(self, "q", Fraction(self.q))
        if self.kind not in ("const", "over-i", "times-i", "geometric"):
            raise ValueError(f"unknown exponent formula kind {self.kind!r}")
        if self.c <= 0:
            raise ValueError("exponent coefficient must be positive")
        if self.kind == "geometric" and (self.q is None or self.q <= 0):
            raise ValueError("geometric exponent formula needs q > 0")

    def value(self, i: int) -> Fraction:
        if self.kind == "const":
            return self.c
        if self.kind == "over-i":
            return self.c / i
        if self.kind == "times-i":
            return self.c * i
        return self.c * self.q ** i

    def limit(self):
        """The limit as i -> inf: a Fraction, or the INFINITE marker."""
        if self.kind == "const":
            return self.c
        if self.kind == "over-i":
            return Fraction(0)
        if self.kind == "times-i":
            return INFINITE
        if self.q < 1:
            return Fraction(0)
        return self.c if self.q == 1 else INFINITE


@dataclass(frozen=True)
class ElementFormula:
    """s_i: constant r, power tail r + b^i, or residue bracket [m/n]_{p_i}.

    An explicit finite prefix overrides the first values; it never affects
    eventual behavior.
    """

    kind: str  # "const" | "power-tail" | "residue-bracket"
    r: Optional[Fraction] = None
    b: Optional[Fraction] = None
    m: Optional[int] = None
    n: Optional[int] = None
    prefix: tuple = ()

    def __post_init__(self):
        if self.kind not in ("const", "power-tail", "residue-bracket"):
            raise ValueError(f"unknown element formula kind {self.kind!r}")
        if self.kind in ("const", "power-tail"):
            object.__setattr__(self, "r", Fraction(self.r))
        if self.kind == "power-tail":
            object.__setattr__(self, "b", Fraction(self.b))
            if self.b == 0:
                raise ValueError("power tail with b = 0: use a constant")
        if self.kind == "residue-bracket" and (self.m is None or self.n is None):
            raise ValueError("residue bracket needs m and n")
        object.__setattr__(self, "prefix", tuple(Fraction(v) for v in self.prefix))

    def value(self, i: int, p: Optional[int] = None) -> Fraction:
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        if self.kind == "const":
            return self.r
        if self.kind == "power-tail":
            return self.r + self.b ** i
        if p is None:
            raise ValueError("residue bracket element needs the prime")
        return Fraction(residue_bracket(p, self.m, self.n))

    def eventual_constant(self) -> Optional[Fraction]:
        """The eventual constant value, or None when there isn't one."""
        if self.kind == "const":
            return self.r
        if self.kind == "power-tail":
            return self.r + 1 if self.b == 1 else None
        return None


@dataclass(frozen=True)
class SequenceDescriptor:
    """A symbolic family of points mu_i, i >= 1."""

    family: str  # "trivial" | "finite" | "real" | "padic"
    element: ElementFormula
    prime: Optional[PrimeFormula] = None
    exponent: Optional[ExponentFormula] = None

    def __post_init__(self):
        if self.family not in ("trivial", "finite", "real", "padic"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in ("finite", "padic") and self.prime is None:
            raise ValueError(f"{self.family} family needs a prime formula")
        if self.family in ("real", "padic") and self.exponent is None:
            raise ValueError(f"{self.family} family needs an exponent formula")
        if self.element.kind == "residue-bracket" and self.family != "finite":
            raise ValueError("residue bracket elements live in the finite family")


# ---------------------------------------------------------------------------
# Instantiation
# ---------------------------------------------------------------------------


def instantiate(desc: SequenceDescriptor, i: int, precision: int = 32) -> Point:
    """The i-th point of the family (i >= 1).

    Raises DivisorCollision for residue-bracket indices where the bracket
    is undefined; those finitely many indices are simply skipped by
    instantiate_prefix.
    """
    if i < 1:
        raise ValueError("sequence indices start at 1")
    if desc.family == "trivial":
        return TrivialRational(desc.element.value(i))
    if desc.family == "real":
        return RealPower(desc.exponent.value(i), desc.element.value(i))
    p = desc.prime.value(i)
    if desc.family == "finite":
        v = desc.element.value(i, p)
        if v.denominator != 1:
            raise ValueError("finite-family elements must be integral residues")
        return TrivialFinite(p, int(v))
    return padic_point(p, desc.exponent.value(i), desc.element.value(i), precision)


def instantiate_prefix(desc: SequenceDescriptor, count: int,
                       precision: int = 32) -> list:
    out = []
    i = 1
    while len(out) < count:
        try:
            out.append(instantiate(desc, i, precision))
        except DivisorCollision:
            pass
        i += 1
        if i > 10 * count + 100:
            break
    return out


# ---------------------------------------------------------------------------
# The convergence predicate
# ---------------------------------------------------------------------------


def converges_to(desc: SequenceDescriptor, target: Point) -> bool:
    """Whether the family converges pointwise to the target seminorm.

    Targets are restricted to trivially normed rationals and finite-field
    points, the two cases with an exact symbolic characterization:

    * to a finite point (q, n): the exponents tend to infinity, the primes
      are eventually q, and eventually s_i lies in n + q Z_q;
    * to a trivial rational m/n: all constants' norms tend to 1 and
      |s_i - m/n| ** (exponent) tends to 0 in the family's own norm.
    """
    if isinstance(target, TrivialFinite):
        return _converges_to_finite(desc, target)
    if isinstance(target, TrivialRational):
        return _converges_to_rational(desc, target)
    raise UnsupportedDescriptor(
        "convergence targets must be trivially normed rationals or "
        "finite-field points")


def _converges_to_finite(desc: SequenceDescriptor, target: TrivialFinite) -> bool:
    q, n = target.p, target.residue
    if desc.family == "padic":
        if desc.exponent.limit() != INFINITE:
            return False
        if desc.prime.kind != "const" or desc.prime.p != q:
            return False
        return _eventually_in_residue_disc(desc.element, q, n)
    if desc.family == "finite":
        if desc.prime.kind != "const" or desc.prime.p != q:
            return False
        if desc.element.kind == "residue-bracket":
            try:
                return residue_bracket(q, desc.element.m, desc.element.n) == n
            except DivisorCollision:
                return False
        k = desc.element.eventual_constant()
        return k is not None and k.denominator == 1 and k % q == n
    return False


def _eventually_in_residue_disc(el: ElementFormula, q: int, n: int) -> bool:
    """Whether eventually v_q(s_i - n) >= 1, for the element grammar."""
    if el.kind == "const":
        d = el.r - n
        return d == 0 or vp(d, q) >= 1
    # s_i - n = (r - n) + b^i
    d0, b = el.r - n, el.b
    vb = vp(b, q)
    if vb > 0:
        return d0 == 0 or vp(d0, q) >= 1
    if vb < 0:
        return False
    # b is a q-adic unit: b^i mod q cycles; eventual membership needs the
    # cycle to collapse, i.e. b = 1 mod q, and then (r - n + 1) = 0 mod q.
    if (b.numerator - b.denominator) % q != 0:
        return False
    d1 = d0 + 1
    return d1 == 0 or vp(d1, q) >= 1


def _converges_to_rational(desc: SequenceDescriptor, target: TrivialRational) -> bool:
    r = target.r
    if desc.family == "trivial":
        return desc.element.eventual_constant() == r
    if desc.family == "real":
        # |t_i - r| ** upsilon_i -> 0 forces t_i = r eventually within the
        # grammar (a nonzero constant or geometric tail gives limit >= a
        # positive constant), together with upsilon_i -> 0.
        if desc.exponent.limit() != 0:
            return False
        return desc.element.eventual_constant() == r
    if desc.family == "padic":
        return _padic_to_rational(desc, r)
    if desc.family == "finite":
        return _finite_to_rational(desc, r)
    raise UnsupportedDescriptor(f"unknown family {desc.family!r}")


def _padic_to_rational(desc: SequenceDescriptor, r: Fraction) -> bool:
    # Constants' norms tend to 1: automatic when the primes run through all
    # primes; for a fixed prime it forces the exponents to 0.
    if not desc.prime.tends_to_infinity and desc.exponent.limit() != 0:
        return False
    el = desc.element
    if el.kind == "const":
        d = el.r - r
    else:  # power tail
        if el.r == r and not desc.prime.tends_to_infinity:
            # |b^i|_p ** w_i = p^(-i * v_p(b) * w_i) -> 0 needs i * w_i -> inf,
            # impossible once w_i -> 0 within the grammar (i * c/i is constant,
            # i * c*q^i -> 0 for q < 1).
            return False
        if desc.prime.tends_to_infinity:
            if el.eventual_constant() == r:
                return True
            raise UnsupportedDescriptor(
                "power-tail elements with primes tending to infinity: the "
                "valuation of s_i - target at p_i has no closed form")
        d = None  # handled above
    if d is not None:
        if d == 0:
            return True
        if desc.prime.tends_to_infinity:
            # Eventually p_i exceeds every prime of d, so |d|_{p_i} = 1 and
            # |d| ** w_i -> 1, never 0.
            return False
        # Fixed prime with exponents -> 0 (forced above): |d|_p ** w_i -> 1.
        return False
    return False


def _finite_to_rational(desc: SequenceDescriptor, r: Fraction) -> bool:
    if not desc.prime.tends_to_infinity:
        return False
    el = desc.element
    if el.kind == "residue-bracket":
        return Fraction(el.m, el.n) == r
    k = el.eventual_constant()
    if k is not None:
        # n*k = m mod p_i for all large primes iff k equals m/n exactly.
        return k == r
    raise UnsupportedDescriptor(
        "non-constant residue sequences with growing primes: divisibility "
        "by p_i has no closed form in the grammar")


# ---------------------------------------------------------------------------
# Numeric cross-check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitCheckReport:
    deviations: dict  # polynomial -> max |lambda_i(p) - lambda(p)| over the tail
    max_deviation: float
    tol: float

    @property
    def within_tol(self) -> bool:
        return self.max_deviation < self.tol


def numeric_limit_check(points: list, target: Point, polys: list,
                        tol: float = 1e-6, tail: int = 0) -> LimitCheckReport:
    """Empirical companion to converges_to on a finite prefix.

    Compares seminorm values on the given polynomials over the tail of the
    prefix (default: the last tenth, at least 10 points).
    """
    if not polys:
        raise ValueError("at least one polynomial is required")
    if not points:
        raise ValueError("empty prefix")
    if tail <= 0:
        tail = max(10, len(points) // 10)
    tail = min(tail, len(points))
    devs = {}
    for q in polys:
        q = poly.normalize(q)
        t_val = eval_point(target, q).to_float()
        worst = 0.0
        for x in points[-tail:]:
            worst = max(worst, abs(eval_point(x, q).to_float() - t_val))
        devs[q] = worst
    return LimitCheckReport(devs, max(devs.values()), tol)


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def descriptor_from_json(doc: dict) -> SequenceDescriptor:
    prime = None
    if "prime" in doc:
        pd = doc["prime"]
        prime = PrimeFormula(pd["kind"], pd.get("p"))
    exponent = None
    if "exponent" in doc:
        ed = doc["exponent"]
        exponent = ExponentFormula(ed["kind"], Fraction(ed["c"]),
                                   Fraction(ed["q"]) if "q" in ed else None)
    el = doc["element"]
    element = ElementFormula(
        el["kind"],
        r=Fraction(el["r"]) if "r" in el else None,
        b=Fraction(el["b"]) if "b" in el else None,
        m=el.get("m"), n=el.get("n"),
        prefix=tuple(Fraction(v) for v in el.get("prefix", ())))
    return SequenceDescriptor(doc["family"], element, prime, exponent)


def descriptor_to_json(desc: SequenceDescriptor) -> dict:
    doc = {"family": desc.family}
    if desc.prime is not None:
        pd = {"kind": desc.prime.kind}
        if desc.prime.p is not None:
            pd["p"] = desc.prime.p
        doc["prime"] = pd
    if desc.exponent is not None:
        ed = {"kind": desc.exponent.kind, "c": str(desc.exponent.c)}
        if desc.exponent.q is not None:
            ed["q"] = str(desc.exponent.q)
        doc["exponent"] = ed
    el = {"kind": desc.element.kind}
    if desc.element.r is not None:
        el["r"] = str(desc.element.r)
    if desc.element.b is not None:
        el["b"] = str(desc.element.b)
    if desc.element.m is not None:
        el["m"] = desc.element.m
        el["n"] = desc.element.n
    if desc.element.prefix:
        el["prefix"] = [str(v) for v in desc.element.prefix]
    doc["element"] = el
    return doc
