"""Finite p-adic matrices and completely continuous operator specifications.

A matrix is a square array of p-adic numbers; an operator specification
describes an infinite matrix over Q_p by an exact rational entry rule (a
single diagonal band with entries c * p^(a*i+b), or an embedded finite
rational block) together with a decay certificate: a monotone function g
with v_p(entry(i,j)) >= g(min(i,j)) and g -> infinity, supplied in affine
or quadratic closed form.  The certificate is what makes operator norms
and Fredholm coefficients computable from finite truncations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import magnitude as mag
from .errors import NotContractive, TruncationInsufficient
from .fields import PadicNumber, is_prime, padic_from_rational, padic_zero, vp

INFINITY = "inf"  # symbolic valuation bound for vanishing tails


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PadicMatrix:
    p: int
    entries: tuple  # k rows, each a tuple of PadicNumber

    def __post_init__(self):
        k = len(self.entries)
        rows = []
        for row in self.entries:
            if len(row) != k:
                raise ValueError("matrix must be square")
            for e in row:
                if not isinstance(e, PadicNumber) or e.p != self.p:
                    raise ValueError("entries must be p-adic numbers at the matrix prime")
            rows.append(tuple(row))
        object.__setattr__(self, "entries", tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def from_rationals(cls, p: int, rows, precision: int = 32) -> "PadicMatrix":
        return cls(p, tuple(tuple(padic_from_rational(p, Fraction(v), precision)
                                  for v in row) for row in rows))

    @classmethod
    def identity(cls, p: int, k: int, precision: int = 32) -> "PadicMatrix":
        return cls.from_rationals(
            p, [[1 if i == j else 0 for j in range(k)] for i in range(k)], precision)

    @classmethod
    def zero(cls, p: int, k: int) -> "PadicMatrix":
        return cls(p, tuple(tuple(padic_zero(p) for _ in range(k)) for _ in range(k)))

    def rational_entries(self):
        """Exact rational rows, or None if some entry lost its provenance."""
        rows = []
        for row in self.entries:
            r = []
            for e in row:
                if e.rational is None:
                    return None
                r.append(e.rational)
            rows.append(tuple(r))
        return tuple(rows)

    def add(self, other: "PadicMatrix") -> "PadicMatrix":
        self._check(other)
        return PadicMatrix(self.p, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def sub(self, other: "PadicMatrix") -> "PadicMatrix":
        return self.add(other.neg())

    def neg(self) -> "PadicMatrix":
        return PadicMatrix(self.p, tuple(tuple(-e for e in row) for row in self.entries))

    def scale(self, c: PadicNumber) -> "PadicMatrix":
        return PadicMatrix(self.p, tuple(tuple(c * e for e in row) for row in self.entries))

    def mul(self, other: "PadicMatrix") -> "PadicMatrix":
        self._check(other)
        k = self.dim
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out_row = []
            for col in cols:
                acc = padic_zero(self.p)
                for a, b in zip(row, col):
                    acc = acc + a * b
                out_row.append(acc)
            out.append(tuple(out_row))
        return PadicMatrix(self.p, tuple(out))

    def _check(self, other: "PadicMatrix"):
        if self.p != other.p or self.dim != other.dim:
            raise ValueError("matrix shape or prime mismatch")

    def min_valuation(self) -> Optional[int]:
        """Smallest entry valuation, or None for the zero matrix."""
        best = None
        for row in self.entries:
            for e in row:
                if not e.is_zero and (best is None or e.valuation < best):
                    best = e.valuation
        return best


def op_norm_matrix(m: PadicMatrix) -> mag.Magnitude:
    v = m.min_valuation()
    return mag.ZERO if v is None else mag.exp_mag(m.p, -v)


def mat_pow(m: PadicMatrix, n: int) -> PadicMatrix:
    if n < 0:
        raise ValueError("nonnegative powers only")
    acc = PadicMatrix.identity(m.p, m.dim)
    base = m
    while n:
        if n & 1:
            acc = acc.mul(base)
        base = base.mul(base) if n > 1 else base
        n >>= 1
    return acc


def neumann_inverse(x: PadicMatrix, max_terms: int = 64,
                    floor_valuation: int = 32) -> PadicMatrix:
    """Inverse of x via the geometric series in (1 - x).

    Requires ||1 - x|| < 1; the series is truncated when the tail norm
    falls below p^(-floor_valuation) (or vanishes for nilpotent tails).
    """
    ident = PadicMatrix.identity(x.p, x.dim)
    n = ident.sub(x)
    norm = op_norm_matrix(n)
    if not norm.is_zero and mag.mag_cmp(norm, mag.ONE) >= 0:
        raise NotContractive(f"||1 - x|| = {norm!r} is not < 1")
    acc = ident
    term = n
    for _ in range(max_terms):
        v = term.min_valuation()
        if v is None or v > floor_valuation:
            return acc
        acc = acc.add(term)
        term = term.mul(n)
    v = term.min_valuation()
    if v is not None and v <= floor_valuation:
        raise TruncationInsufficient(
            f"Neumann series tail still at valuation {v} after {max_terms} terms")
    return acc


# ---------------------------------------------------------------------------
# Operator specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecayCertificate:
    """g(n) = a*n + b (affine) or a*n^2 + b*n + c (quadratic), increasing."""

    form: str
    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.form not in ("affine", "quadratic"):
            raise ValueError(f"unknown decay form {self.form!r}")
        if self.a <= 0:
            raise ValueError("decay certificate must increase (a > 0)")

    def __call__(self, n: int) -> Fraction:
        if self.form == "affine":
            return self.a * n + self.b
        return self.a * n * n + self.b * n + self.c

    def to_json(self) -> dict:
        doc = {"form": self.form, "a": str(self.a), "b": str(self.b)}
        if self.form == "quadratic":
            doc["c"] = str(self.c)
        return doc


@dataclass(frozen=True)
class EntryRule:
    """Single band: entry(i, i+offset) = coef * p^(ea*i + eb), i >= 1."""

    coef: Fraction
    ea: int
    eb: int
    offset: int

    def __post_init__(self):
        object.__setattr__(self, "coef", Fraction(self.coef))
        if self.coef == 0:
            raise ValueError("band coefficient must be nonzero")


_RULE_RE = re.compile(
    r"^\s*(?:(-?\d+(?:/\d+)?)\s*\*?\s*)?"      # optional rational coefficient
    r"p\^(\(?)([^()\s]+)\)?"                    # p^expr or p^(expr)
    r"\s+at\s+\(\s*i\s*,\s*i\s*(?:([+-])\s*(\d+))?\s*\)\s*$")

_LIN_RE = re.compile(r"^(?:(-?\d*)i)?([+-]?\d+)?$")


def parse_entry_rule(text: str) -> EntryRule:
    """Parse rules like "p^i at (i,i+1)" or "2 * p^(2i+1) at (i,i)"."""
    m = _RULE_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse entry rule {text!r}")
    coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
    lin = _LIN_RE.match(m.group(3).replace(" ", "").replace("*", ""))
    if not lin or (lin.group(1) is None and lin.group(2) is None):
        raise ValueError(f"exponent must be linear in i: {m.group(3)!r}")
    ia = lin.group(1)
    ea = 1 if ia in ("", None) else (-1 if ia == "-" else int(ia))
    if lin.group(1) is None:
        ea = 0
    eb = int(lin.group(2)) if lin.group(2) else 0
    sign, off = m.group(4), m.group(5)
    offset = 0 if off is None else (int(off) if sign == "+" else -int(off))
    return EntryRule(coef, ea, eb, offset)


def rule_to_str(rule: EntryRule) -> str:
    if rule.ea == 0:
        exp = str(rule.eb)
    else:
        ia = "" if rule.ea == 1 else ("-" if rule.ea == -1 else str(rule.ea))
        exp = f"{ia}i" + (f"{rule.eb:+d}" if rule.eb else "")
        if rule.eb:
            exp = f"({exp})"
    coef = "" if rule.coef == 1 else f"{rule.coef} * "
    at = "(i,i)" if rule.offset == 0 else f"(i,i{rule.offset:+d})"
    return f"{coef}p^{exp} at {at}"


@dataclass(frozen=True)
class OperatorSpec:
    """A completely continuous operator on c_0 over Q_p.

    Either a single-band rule (kind "diagonal" or "banded") or an embedded
    finite rational block (kind "general"); both come with a decay
    certificate g, spot-checked on construction.
    """

    p: int
    kind: str  # "diagonal" | "banded" | "general"
    rule: Optional[EntryRule] = None
    matrix: Optional[tuple] = None  # finite block of Fractions
    width: int = 0
    decay: Optional[DecayCertificate] = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.kind not in ("diagonal", "banded", "general"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if (self.rule is None) == (self.matrix is None):
            raise ValueError("exactly one of rule and matrix must be given")
        if self.rule is not None:
            if self.kind == "diagonal" and self.rule.offset != 0:
                raise ValueError("diagonal spec with off-diagonal rule")
            if self.kind == "banded" and abs(self.rule.offset) != self.width:
                raise ValueError("band width disagrees with the rule offset")
            if self.rule.ea <= 0:
                raise ValueError("band entries must decay: exponent slope > 0")
            if self.decay is None:
                raise ValueError("band specs need a decay certificate")
        if self.matrix is not None:
            rows = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
            k = len(rows)
            if any(len(r) != k for r in rows):
                raise ValueError("embedded block must be square")
            object.__setattr__(self, "matrix", rows)
        if self.decay is not None:
            self._spot_check()

    def entry(self, i: int, j: int) -> Fraction:
        """Exact rational entry at 1-based (i, j)."""
        if i < 1 or j < 1:
            raise ValueError("indices start at 1")
        if self.rule is not None:
            if j - i != self.rule.offset:
                return Fraction(0)
            return self.rule.coef * Fraction(self.p) ** (self.rule.ea * i + self.rule.eb)
        k = len(self.matrix)
        if i > k or j > k:
            return Fraction(0)
        return self.matrix[i - 1][j - 1]

    def bound_g(self, n: int):
        """Certified valuation lower bound for entries with min(i,j) >= n."""
        if self.matrix is not None and n > len(self.matrix):
            return INFINITY
        if self.decay is not None:
            return self.decay(n)
        # Finite block without a certificate: exact bound from the block.
        best = None
        for i in range(n, len(self.matrix) + 1):
            for j in range(1, len(self.matrix) + 1):
                for a, b in ((i, j), (j, i)):
                    v = self.matrix[a - 1][b - 1]
                    if v != 0 and min(a, b) >= n:
                        w = vp(v, self.p)
                        if best is None or w < best:
                            best = w
        return INFINITY if best is None else Fraction(best)

    def _spot_check(self, horizon: int = 12):
        for i in range(1, horizon + 1):
            for j in range(1, horizon + 1):
                v = self.entry(i, j)
                if v != 0 and Fraction(vp(v, self.p)) < self.decay(min(i, j)):
                    raise ValueError(
                        f"decay certificate violated at ({i},{j}): "
                        f"v_p = {vp(v, self.p)} < g = {self.decay(min(i, j))}")

    def to_json(self) -> dict:
        doc = {"p": self.p, "kind": self.kind}
        if self.kind == "banded":
            doc["width"] = self.width
        if self.rule is not None:
            doc["entries"] = rule_to_str(self.rule)
        else:
            doc["matrix"] = [[str(v) for v in row] for row in self.matrix]
        if self.decay is not None:
            doc["decay"] = self.decay.to_json()
        return doc


def spec_from_json(doc: dict) -> OperatorSpec:
    decay = None
    if "decay" in doc:
        d = doc["decay"]
        decay = DecayCertificate(d["form"], Fraction(d["a"]),
                                 Fraction(d.get("b", 0)), Fraction(d.get("c", 0)))
    rule = parse_entry_rule(doc["entries"]) if "entries" in doc else None
    matrix = tuple(tuple(Fraction(v) for v in row) for row in doc["matrix"]) \
        if "matrix" in doc else None
    return OperatorSpec(doc["p"], doc["kind"], rule=rule, matrix=matrix,
                        width=doc.get("width", 0), decay=decay)


# ---------------------------------------------------------------------------
# Truncation with coefficient stabilization bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Truncation:
    matrix: PadicMatrix
    rational: tuple  # same block as exact Fractions
    size: int
    coeff_bound: Callable  # m -> valuation lower bound (Fraction or INFINITY)


def truncate(spec: OperatorSpec, n: int, precision: int = 32) -> Truncation:
    """Top-left n x n block plus a stabilization bound.

    coeff_bound(m) lower-bounds the valuation of the difference between the
    degree-m Fredholm coefficient computed at this truncation and at any
    larger one.  Every omitted principal m x m minor touches an index
    > n, so it contains a factor of valuation >= g(n+1-width); the other
    m-1 factors contribute the smallest certificate values (offset by the
    bandwidth for banded rules, conservatively floored at g(1) for general
    blocks).
    """
    if n < 1:
        raise ValueError("truncation size must be positive")
    rows = tuple(tuple(spec.entry(i, j) for j in range(1, n + 1))
                 for i in range(1, n + 1))
    m = PadicMatrix.from_rationals(spec.p, rows, precision)
    width = abs(spec.rule.offset) if spec.rule is not None else 0

    def coeff_bound(deg: int):
        lead = spec.bound_g(max(1, n + 1 - width))
        if lead == INFINITY:
            return INFINITY
        total = Fraction(lead)
        if spec.rule is not None:
            for i in range(1, deg):
                total += Fraction(spec.decay(max(1, i - width)))
        else:
            floor = spec.bound_g(1)
            if floor != INFINITY:
                total += (deg - 1) * min(Fraction(floor), Fraction(0))
        return total

    return Truncation(m, rows, n, coeff_bound)


# ---------------------------------------------------------------------------
# Operator norm and spectral radius
# ---------------------------------------------------------------------------


def op_norm(op) -> mag.Magnitude:
    """Sup of entry magnitudes, exact.

    For a spec the certificate localizes the sup to a finite window: once
    g(n+1) exceeds the smallest valuation seen, no further entry can beat it.
    """
    if isinstance(op, PadicMatrix):
        return op_norm_matrix(op)
    spec = op
    n = 8
    while True:
        best = None
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                v = spec.entry(i, j)
                if v != 0:
                    w = vp(v, spec.p)
                    if best is None or w < best:
                        best = w
        tail = spec.bound_g(n + 1)
        if tail == INFINITY or (best is not None and tail >= best):
            break
        n *= 2
        if n > 4096:
            raise TruncationInsufficient("operator norm window exceeded 4096")
    return mag.ZERO if best is None else mag.exp_mag(spec.p, -best)


@dataclass(frozen=True)
class SpectralRadiusReport:
    estimate: mag.Magnitude
    sequence: tuple  # ||u^n|| ** (1/n) for n = 1..n_max
    converged: bool


def _norm_sequence(m: PadicMatrix, n_max: int) -> list:
    out = []
    power = PadicMatrix.identity(m.p, m.dim)
    for n in range(1, n_max + 1):
        power = power.mul(m)
        v = power.min_valuation()
        out.append(mag.ZERO if v is None
                   else mag.exp_mag(m.p, Fraction(-v, n)))
    return out


def _closed_form_limit(spec: OperatorSpec) -> Optional[mag.Magnitude]:
    """Exact lim ||u^n|| ** (1/n) for structured specs, None when unknown."""
    if spec.rule is not None:
        r = spec.rule
        base = r.ea + r.eb + vp(r.coef, spec.p)
        if r.offset == 0:
            # ||u^n|| = p^(-n * min_i v(entry_ii)); the min sits at i = 1.
            return mag.exp_mag(spec.p, -base)
        # Single off-diagonal band: v(u^n)/n grows linearly in n.
        return mag.ZERO
    # Finite block: max root magnitude of det(1 - t*block), via its
    # Newton polygon (late import avoids a module cycle).
    from .fredholm import charpoly_fredholm, newton_polygon_of_valuations
    coeffs = charpoly_fredholm(spec.matrix)
    pts = [(i, vp(c, spec.p)) for i, c in enumerate(coeffs) if c != 0]
    ng = newton_polygon_of_valuations(pts)
    if not ng.segments:
        return mag.ZERO
    sigma = min(s.slope for s in ng.segments)
    return mag.exp_mag(spec.p, -sigma)


def spectral_radius(spec: OperatorSpec, n_max: int = 8, n: int = 16,
                    precision: int = 32) -> SpectralRadiusReport:
    """The sequence ||u^n|| ** (1/n) with a certified limit where possible.

    The truncation is validated by recomputing the norms five rows larger
    and requiring agreement; structured specs (single band or finite block)
    additionally get an exact limit, which the estimate reports.
    """
    if spec.matrix is not None:
        n = max(n, len(spec.matrix))
    t1 = truncate(spec, n, precision)
    t2 = truncate(spec, n + 5, precision)
    seq1 = _norm_sequence(t1.matrix, n_max)
    seq2 = _norm_sequence(t2.matrix, n_max)
    for a, b in zip(seq1, seq2):
        if (a.is_zero != b.is_zero) or (not a.is_zero and mag.mag_cmp(a, b) != 0):
            raise TruncationInsufficient(
                f"norm sequence not stable at truncation {n}")
    limit = _closed_form_limit(spec)
    if limit is not None:
        return SpectralRadiusReport(limit, tuple(seq1), True)
    tail = seq1[-3:]
    converged = len(tail) == 3 and all(
        not t.is_zero and mag.mag_cmp(t, tail[0]) == 0 for t in tail)
    return SpectralRadiusReport(seq1[-1], tuple(seq1), converged)
