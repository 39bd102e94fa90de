"""Fredholm determinants of completely continuous p-adic operators.

The determinant det(1 - t*u) is computed exactly on a finite truncation:
its coefficients are signed sums of principal minors, obtained here by
power-series Gaussian elimination over Q[[t]] (every pivot is a unit
series with constant term 1, so no pivoting is needed and the cost stays
polynomial in the truncation size and degree).  The decay certificate of
the operator specification turns these truncated coefficients into
certified approximations of the true ones.

From the coefficients: the resolvent recursion and its defining identity,
the Newton polygon, zero magnitudes per segment, Hensel lifting of
integer-slope zeros into Q_p, and the lower bound of every zero magnitude
by the reciprocal spectral radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import magnitude as mag
from .errors import IdentityViolation, IndeterminateValuation, TruncationInsufficient
from .fields import PadicNumber, padic_from_rational, vp
from .operators import (INFINITY, OperatorSpec, PadicMatrix, SpectralRadiusReport,
                        spectral_radius, truncate)


# ---------------------------------------------------------------------------
# Series helpers (dense lists of Fractions, truncated mod t^(D+1))
# ---------------------------------------------------------------------------


def _ser_mul(a: list, b: list, d: int) -> list:
    out = [Fraction(0)] * (d + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(min(len(b), d + 1 - i)):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def _ser_inv(a: list, d: int) -> list:
    """Inverse of a unit series (a[0] = 1) mod t^(d+1)."""
    out = [Fraction(0)] * (d + 1)
    out[0] = Fraction(1)
    for n in range(1, d + 1):
        s = Fraction(0)
        for k in range(1, min(n, len(a) - 1) + 1):
            s += a[k] * out[n - k]
        out[n] = -s
    return out


def det_one_minus_t(rows, d: int) -> list:
    """Coefficients of det(1 - t*A) mod t^(d+1) for a rational square A."""
    k = len(rows)
    m = [[[Fraction(1 if i == j else 0), -Fraction(rows[i][j])] +
          [Fraction(0)] * (d - 1) for j in range(k)] for i in range(k)]
    det = [Fraction(0)] * (d + 1)
    det[0] = Fraction(1)
    for c in range(k):
        pivot = m[c][c]
        det = _ser_mul(det, pivot, d)
        inv = _ser_inv(pivot, d)
        for r in range(c + 1, k):
            if all(v == 0 for v in m[r][c]):
                continue
            factor = _ser_mul(m[r][c], inv, d)
            for j in range(c, k):
                prod = _ser_mul(factor, m[c][j], d)
                m[r][j] = [a - b for a, b in zip(m[r][j], prod)]
    return det


def charpoly_fredholm(rows) -> list:
    """Exact coefficients of det(1 - t*A), degree = dim, via the trace
    recursion (Faddeev-LeVerrier)."""
    k = len(rows)
    a = [[Fraction(v) for v in row] for row in rows]
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * k for _ in range(k)]
    for step in range(1, k + 1):
        for i in range(k):
            m[i][i] += coeffs[-1]
        m = [[sum(a[i][x] * m[x][j] for x in range(k)) for j in range(k)]
             for i in range(k)]
        tr = sum(m[i][i] for i in range(k))
        coeffs.append(-tr / step)
    return coeffs


# ---------------------------------------------------------------------------
# Fredholm coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FredholmSeries:
    p: int
    coeffs: tuple  # exact Fractions c_0..c_D of the truncation
    bounds: tuple  # per-degree stabilization: valuation bound or INFINITY
    truncation: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def valuation(self, m: int) -> Optional[int]:
        c = self.coeffs[m]
        return None if c == 0 else vp(c, self.p)

    def certified(self, m: int) -> bool:
        """Whether the coefficient's valuation is certified stable."""
        b = self.bounds[m]
        if b == INFINITY:
            return True
        v = self.valuation(m)
        return v is not None and Fraction(v) < Fraction(b)

    def coefficient(self, m: int, precision: int = 32) -> PadicNumber:
        return padic_from_rational(self.p, self.coeffs[m], precision)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "truncation": self.truncation,
            "coeffs": [{"m": m, "value": str(c),
                        "valuation": self.valuation(m),
                        "stabilization_bound": (None if self.bounds[m] == INFINITY
                                                else str(self.bounds[m])),
                        "certified": self.certified(m)}
                       for m, c in enumerate(self.coeffs)],
        }


def fredholm_coeffs(spec: OperatorSpec, degree: int, n: int,
                    precision: int = 32) -> FredholmSeries:
    """det(1 - t*u) of the n x n truncation, exactly, up to the degree."""
    if n < degree:
        raise TruncationInsufficient(
            f"truncation {n} is smaller than the requested degree {degree}")
    trunc = truncate(spec, n, precision)
    coeffs = det_one_minus_t(trunc.rational, degree)
    bounds = [INFINITY] + [trunc.coeff_bound(m) for m in range(1, degree + 1)]
    return FredholmSeries(spec.p, tuple(coeffs), tuple(bounds), n)


# ---------------------------------------------------------------------------
# Resolvent
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Resolvent:
    terms: tuple  # x_0..x_D as PadicMatrix
    verified: bool


def fredholm_resolvent(series: FredholmSeries, spec: OperatorSpec,
                       degree: int, n: int, precision: int = 32) -> Resolvent:
    """The recursion x_0 = 1, x_i = c_i + u x_{i-1} on the truncation.

    Verifies the defining identity det(1 - t*u) = P(t, u)(1 - t*u)
    coefficientwise mod t^(degree+1): x_i - x_{i-1} u = c_i * 1 exactly.
    A failure raises IdentityViolation and signals an internal bug.
    """
    if degree > series.degree:
        raise ValueError("resolvent degree exceeds the series degree")
    trunc = truncate(spec, n, precision)
    u = trunc.rational
    k = len(u)
    ident = [[Fraction(1 if i == j else 0) for j in range(k)] for i in range(k)]
    xs = [ident]
    for m in range(1, degree + 1):
        c = series.coeffs[m]
        prev = xs[-1]
        nxt = [[c * ident[i][j] +
                sum(u[i][x] * prev[x][j] for x in range(k))
                for j in range(k)] for i in range(k)]
        xs.append(nxt)
    # Right-sided check: coefficient of t^m in P(t,u)(1 - t*u).
    for m in range(1, degree + 1):
        prev = xs[m - 1]
        for i in range(k):
            for j in range(k):
                lhs = xs[m][i][j] - sum(prev[i][x] * u[x][j] for x in range(k))
                if lhs != series.coeffs[m] * ident[i][j]:
                    raise IdentityViolation(
                        f"resolvent identity failed at degree {m}, entry ({i},{j})")
    mats = tuple(PadicMatrix.from_rationals(spec.p, x, precision) for x in xs)
    return Resolvent(mats, True)


# ---------------------------------------------------------------------------
# Newton polygon
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    slope: Fraction
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple  # (m, Fraction valuation), strictly increasing in m
    segments: tuple  # Segment, slopes strictly increasing

    def to_json(self) -> dict:
        return {"vertices": [[m, str(v)] for m, v in self.vertices],
                "segments": [{"slope": str(s.slope), "length": s.length}
                             for s in self.segments]}


def newton_polygon_of_valuations(points) -> NewtonPolygon:
    """Lower convex hull of (m, v) points with strictly increasing m."""
    pts = sorted((int(m), Fraction(v)) for m, v in points)
    if len({m for m, _ in pts}) != len(pts):
        raise ValueError("duplicate abscissas")
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep the middle point only when the path turns strictly left
            # (the middle point lies strictly below the chord)
            if (x2 - x1) * (pt[1] - y1) > (pt[0] - x1) * (y2 - y1):
                break
            hull.pop()
        hull.append(pt)
    segments = tuple(
        Segment(Fraction(y2 - y1, x2 - x1), x2 - x1)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]))
    return NewtonPolygon(tuple(hull), segments)


def newton_polygon(series: FredholmSeries) -> NewtonPolygon:
    """Polygon of the certified coefficient valuations; c_0 must be 1."""
    if series.coeffs[0] != 1:
        raise ValueError("series must have constant term 1")
    pts = []
    for m, c in enumerate(series.coeffs):
        if c == 0:
            continue
        if not series.certified(m):
            raise IndeterminateValuation(
                f"coefficient {m} valuation not certified at truncation "
                f"{series.truncation}")
        pts.append((m, vp(c, series.p)))
    return newton_polygon_of_valuations(pts)


def zero_valuations(ng: NewtonPolygon, p: int) -> list:
    """(magnitude, multiplicity) of determinant zeros per segment.

    A segment of slope sigma and horizontal length ell carries ell zeros of
    valuation -sigma, i.e. of magnitude p^sigma, in a suitable complete
    extension.
    """
    return [(mag.exp_mag(p, s.slope), s.length) for s in ng.segments]


# ---------------------------------------------------------------------------
# Zero-magnitude lower bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroBoundReport:
    holds: bool
    min_zero: Optional[mag.Magnitude]
    inv_radius: Optional[mag.Magnitude]
    radius: SpectralRadiusReport


def check_zero_bound(series: FredholmSeries, spec: OperatorSpec,
                     n_max: int = 8) -> ZeroBoundReport:
    """Every zero magnitude is at least 1 / (spectral radius).

    When the radius is zero the determinant has no zeros at all, so the
    bound holds exactly when the polygon is empty.
    """
    ng = newton_polygon(series)
    zeros = zero_valuations(ng, series.p)
    radius = spectral_radius(spec, n_max=n_max)
    min_zero = None
    for m, _count in zeros:
        if min_zero is None or mag.mag_cmp(m, min_zero) < 0:
            min_zero = m
    if radius.estimate.is_zero:
        return ZeroBoundReport(not zeros, min_zero, None, radius)
    inv = mag.mag_reciprocal(radius.estimate)
    holds = min_zero is None or mag.mag_cmp(min_zero, inv) >= 0
    return ZeroBoundReport(holds, min_zero, inv, radius)


# ---------------------------------------------------------------------------
# Hensel lifting of integer-slope zeros
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootReport:
    roots: tuple  # PadicNumber zeros of the determinant in Q_p
    residuals: tuple  # per root: exact valuation of series(root), or None if 0
    valuation_only: tuple  # (slope, multiplicity) for segments not lifted


def find_rational_zeros(series: FredholmSeries, precision: int = 32) -> RootReport:
    """Zeros of the determinant polynomial lying in Q_p.

    Per Newton segment: an integer slope sigma rescales to a residue
    polynomial over F_p whose simple nonzero roots lift by Newton iteration
    to roots of valuation -sigma; non-integer slopes and multiple residue
    roots are reported by valuation only.
    """
    p = series.p
    coeffs = series.coeffs
    ng = newton_polygon(series)
    roots, residuals, val_only = [], [], []
    for (x1, y1), (x2, y2), seg in zip(ng.vertices, ng.vertices[1:], ng.segments):
        if seg.slope.denominator != 1:
            val_only.append((seg.slope, seg.length))
            continue
        sigma = int(seg.slope)
        mu = y1 - sigma * x1  # valuation of the rescaled minimum
        # g(x) = p^(-mu) * f(p^(-sigma) x): p-integral coefficients, units
        # exactly on this segment.
        scaled = [c * Fraction(p) ** (-sigma * m - int(mu))
                  for m, c in enumerate(coeffs)]
        lead = 1
        for c in scaled:
            d = c.denominator
            while d % p == 0:
                raise AssertionError("rescaled coefficient not p-integral")
            lead = lead * d // _gcd(lead, d)
        ints = [int(c * lead) for c in scaled]  # unit rescale, roots unchanged
        lifted = _lift_segment(ints, p, precision)
        # roots in proper extensions (multiple or missing residue roots)
        remaining = seg.length - len(lifted)
        if remaining > 0:
            val_only.append((seg.slope, remaining))
        for x_lift in lifted:
            t = PadicNumber(p, -sigma, x_lift % p ** precision, precision)
            roots.append(t)
            res = _exact_residual(coeffs, p, sigma, x_lift)
            residuals.append(res)
    return RootReport(tuple(roots), tuple(residuals), tuple(val_only))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _poly_eval_mod(ints: list, x: int, mod: int) -> int:
    acc = 0
    for c in reversed(ints):
        acc = (acc * x + c) % mod
    return acc


def _lift_segment(ints: list, p: int, precision: int) -> list:
    """Hensel-lift simple nonzero residue roots of the segment polynomial."""
    deriv = [m * c for m, c in enumerate(ints)][1:]
    lifted = []
    for r0 in range(1, p):
        if _poly_eval_mod(ints, r0, p) != 0:
            continue
        if _poly_eval_mod(deriv, r0, p) == 0:
            continue  # multiple residue root: reported by valuation only
        x = r0
        k = 1
        while k < precision:
            k = min(2 * k, precision)
            mod = p ** k
            fx = _poly_eval_mod(ints, x, mod)
            dfx = _poly_eval_mod(deriv, x, mod)
            x = (x - fx * pow(dfx, -1, mod)) % mod
        lifted.append(x)
    return lifted


def _exact_residual(coeffs, p: int, sigma: int, x_lift: int) -> Optional[int]:
    """v_p of the exact rational series value at t = p^(-sigma) * x_lift."""
    t = Fraction(x_lift, p ** sigma) if sigma >= 0 else \
        Fraction(x_lift * p ** (-sigma))
    val = Fraction(0)
    for c in reversed(coeffs):
        val = val * t + c
    return None if val == 0 else vp(val, p)
