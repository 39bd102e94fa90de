"""Computable Berkovich spectra.

Three concrete cases: the spectrum of an integer in the arithmetic base
ring (a family indexed by the minimal fields, with an exact membership
predicate), the spectrum of a complex matrix (eigenvalues folded onto the
closed upper half plane), and the spectrum of a completely continuous
p-adic operator (the zero point plus the reciprocals of the Fredholm
determinant zeros).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import mpmath

from . import magnitude as mag
from .errors import IllConditioned
from .fields import padic_from_rational, vp
from .fredholm import (charpoly_fredholm, find_rational_zeros, fredholm_coeffs,
                       newton_polygon, newton_polygon_of_valuations)
from .operators import OperatorSpec, PadicMatrix, spectral_radius
from .points import (PadicPower, Point, RealPower, TrivialFinite,
                     TrivialRational, complex_fold, padic_point, points_equal)

MAX_COMPLEX_DIM = 12


@dataclass(frozen=True)
class SpectrumDescription:
    """Explicit points, symbolic families, and a membership predicate."""

    explicit_points: tuple
    families: tuple  # human/machine-readable family descriptors (dicts)
    contains: Callable  # Point -> bool
    magnitude_only: tuple = ()  # (Magnitude, multiplicity) without a Q_p point

    def to_json(self) -> dict:
        from .points import point_to_json
        return {
            "explicit_points": [point_to_json(x) for x in self.explicit_points],
            "families": list(self.families),
            "magnitude_only": [{"magnitude": m.to_json(), "count": c}
                               for m, c in self.magnitude_only],
        }


# ---------------------------------------------------------------------------
# Integers
# ---------------------------------------------------------------------------


def spectrum_integer(m: int, sample_primes=(2, 3, 5),
                     sample_upsilons=(1, Fraction(1, 2)),
                     sample_omegas=(1, 2)) -> SpectrumDescription:
    """The spectrum of the integer m: its image in every minimal field.

    A point belongs exactly when it is the image of m in its own branch:
    the trivially normed rational m, a real-branch m for any exponent, the
    p-adic m for any prime and exponent, or the residue of m in any prime
    field.  For m = 0 this is precisely the set of branch zeros.
    """
    m = int(m)

    def contains(x: Point) -> bool:
        if isinstance(x, TrivialRational):
            return x.r == m
        if isinstance(x, TrivialFinite):
            return x.residue == m % x.p
        if isinstance(x, RealPower):
            return x.t == m
        if isinstance(x, PadicPower):
            eq, _certain = x.s.equals(padic_from_rational(x.p, m, x.s.prec))
            return eq
        # The algebraic, generic and complex variants never carry an
        # integer's image: the image is the rational point itself.
        return False

    explicit = [TrivialRational(Fraction(m))]
    for u in sample_upsilons:
        explicit.append(RealPower(Fraction(u), Fraction(m)))
    for p in sample_primes:
        explicit.append(TrivialFinite(p, m % p))
        for w in sample_omegas:
            explicit.append(padic_point(p, w, m))
    families = (
        {"family": "trivial-rational", "element": str(m)},
        {"family": "real-power", "element": str(m), "upsilon": "(0,1]"},
        {"family": "padic-power", "element": str(m), "p": "any prime",
         "omega": "(0,inf)"},
        {"family": "trivial-finite", "element": f"{m} mod p", "p": "any prime"},
    )
    return SpectrumDescription(tuple(explicit), families, contains)


# ---------------------------------------------------------------------------
# Complex matrices
# ---------------------------------------------------------------------------


def _gauss_matmul(a, b):
    k = len(a)
    return [[_gsum(_gmul(a[i][x], b[x][j]) for x in range(k))
             for j in range(k)] for i in range(k)]


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gsum(vals):
    re, im = Fraction(0), Fraction(0)
    for a, b in vals:
        re += a
        im += b
    return (re, im)


def gauss_charpoly(rows) -> list:
    """det(t*I - A) coefficients (low to high) for Gaussian-rational A."""
    k = len(rows)
    a = [[(Fraction(v[0]), Fraction(v[1])) for v in row] for row in rows]
    # Faddeev-LeVerrier over Q(i): det(1 - tA) then reverse with signs.
    coeffs = [(Fraction(1), Fraction(0))]
    m = [[(Fraction(0), Fraction(0))] * k for _ in range(k)]
    for step in range(1, k + 1):
        m = [row[:] for row in m]
        for i in range(k):
            m[i][i] = (m[i][i][0] + coeffs[-1][0], m[i][i][1] + coeffs[-1][1])
        m = _gauss_matmul(a, m)
        tr = _gsum(m[i][i] for i in range(k))
        coeffs.append((-tr[0] / step, -tr[1] / step))
    # det(1 - tA) = sum c_m t^m; det(tI - A) = t^k * det(1 - (1/t) A)
    return list(reversed(coeffs))


def spectrum_complex_matrix(rows, tol: float = 1e-10) -> list:
    """Eigenvalues folded onto the closed upper half plane, deduplicated.

    Input rows hold Gaussian rationals as (re, im) pairs (plain numbers are
    read as rationals).  The characteristic polynomial is computed exactly;
    its roots come from mpmath at generous precision and are folded.
    """
    rows = [[_as_gauss(v) for v in row] for row in rows]
    k = len(rows)
    if k > MAX_COMPLEX_DIM:
        raise ValueError(f"matrix dimension {k} exceeds {MAX_COMPLEX_DIM}")
    if any(len(r) != k for r in rows):
        raise ValueError("matrix must be square")
    coeffs = gauss_charpoly(rows)
    with mpmath.workdps(50):
        poly = [mpmath.mpc(mpmath.mpf(c[0].numerator) / c[0].denominator,
                           mpmath.mpf(c[1].numerator) / c[1].denominator)
                for c in coeffs]
        try:
            roots, err = mpmath.polyroots(list(reversed(poly)), maxsteps=200,
                                          error=True)
        except mpmath.libmp.NoConvergence as exc:
            raise IllConditioned(f"root refinement failed: {exc}") from exc
        if err > tol:
            raise IllConditioned(f"root error estimate {float(err)} exceeds {tol}")
        pts = []
        for r in roots:
            re = Fraction(float(mpmath.re(r))).limit_denominator(10 ** 15)
            im_f = float(mpmath.im(r))
            if abs(im_f) <= tol:
                im_f = 0.0
            im = Fraction(im_f).limit_denominator(10 ** 15)
            pts.append(complex_fold(Fraction(1), re, im, approx=True))
    out = []
    for x in pts:
        if not any(points_equal(x, y) for y in out):
            out.append(x)
    return out


def _as_gauss(v):
    if isinstance(v, (tuple, list)):
        return (Fraction(v[0]), Fraction(v[1]))
    if isinstance(v, complex):
        return (Fraction(v.real), Fraction(v.imag))
    return (Fraction(v), Fraction(0))


def conjugate_matrix(rows):
    return [[(Fraction(_as_gauss(v)[0]), -Fraction(_as_gauss(v)[1]))
             for v in row] for row in rows]


# ---------------------------------------------------------------------------
# Completely continuous operators
# ---------------------------------------------------------------------------


def spectrum_cc_operator(spec: OperatorSpec, degree: int, n: int,
                         precision: int = 32) -> SpectrumDescription:
    """The zero point plus reciprocals of the Fredholm determinant zeros.

    Zeros lifted into Q_p give explicit points of exponent one; segments
    whose zeros live in proper extensions contribute magnitude-only
    entries (the reciprocal magnitude p^(-slope)).  Every magnitude is at
    most the spectral radius.
    """
    series = fredholm_coeffs(spec, degree, n, precision)
    report = find_rational_zeros(series, precision)
    zero_pt = padic_point(spec.p, 1, 0, precision)
    explicit = [zero_pt]
    for t in report.roots:
        explicit.append(PadicPower(spec.p, Fraction(1), t.inverse()))
    magnitude_only = tuple((mag.exp_mag(spec.p, -slope), count)
                           for slope, count in report.valuation_only)
    radius = spectral_radius(spec, precision=precision)
    for x in explicit[1:]:
        m = mag.exp_mag(spec.p, -x.s.valuation)
        if not radius.estimate.is_zero and mag.mag_cmp(m, radius.estimate) > 0:
            raise AssertionError("spectrum magnitude exceeds the spectral radius")
    families = ({"family": "padic-power", "p": spec.p, "omega": "1",
                 "description": "reciprocals of determinant zeros"},)

    def contains(x: Point) -> bool:
        return any(points_equal(x, y) for y in explicit)

    return SpectrumDescription(tuple(explicit), families, contains,
                               magnitude_only)


def crosscheck_finite_rank(a: PadicMatrix, degree: Optional[int] = None,
                           precision: int = 32) -> bool:
    """Two independent routes to the nonzero spectrum magnitudes agree.

    Route one: Fredholm coefficients of the embedded block by power-series
    elimination, Newton polygon, reciprocal zero magnitudes.  Route two:
    the characteristic polynomial by the trace recursion, its Newton
    polygon, root magnitudes.  Returns their equality as multisets.
    """
    rows = a.rational_entries()
    if rows is None:
        raise ValueError("cross-check needs exact rational entries")
    k = a.dim
    if degree is None:
        degree = k
    spec = OperatorSpec(a.p, "general", matrix=rows)
    series = fredholm_coeffs(spec, degree, max(k, degree), precision)
    ng1 = newton_polygon(series)
    route1 = sorted((-s.slope, s.length) for s in ng1.segments)

    # det(tI - A) = t^k + a_{k-1} t^{k-1} + ...; root valuations are the
    # negated slopes of its polygon, root magnitude p^(slope).
    cp = charpoly_fredholm(rows)  # det(1 - tA)
    char = list(reversed(cp))     # det(tI - A) up to sign conventions
    pts = [(i, vp(c, a.p)) for i, c in enumerate(char) if c != 0]
    ng2 = newton_polygon_of_valuations(pts)
    route2 = sorted((s.slope, s.length) for s in ng2.segments)
    return route1 == route2
