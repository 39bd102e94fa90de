import random
from fractions import Fraction

import mpmath
import pytest

from berkline import magnitude as mag
from berkline import polynomials as poly
from berkline.operators import OperatorSpec, PadicMatrix, spec_from_json
from berkline.points import (GenericTrivial, PadicPower, RealPower,
                             TrivialFinite, TrivialRational, complex_fold,
                             eval_point, padic_point, points_equal,
                             trivial_algebraic)
from berkline.spectra import (SpectrumDescription, conjugate_matrix,
                              crosscheck_finite_rank, gauss_charpoly,
                              spectrum_cc_operator, spectrum_complex_matrix,
                              spectrum_integer)

SHIFT2 = {"p": 2, "kind": "banded", "width": 1, "entries": "p^i at (i,i+1)",
          "decay": {"form": "affine", "a": 1, "b": 0}}
DIAG3 = {"p": 3, "kind": "diagonal", "entries": "p^i at (i,i)",
         "decay": {"form": "affine", "a": 1, "b": 0}}


# ---------------------------------------------------------------------------
# Integer spectra
# ---------------------------------------------------------------------------


def test_spectrum_integer_zero_membership():
    s = spectrum_integer(0)
    assert s.contains(TrivialRational(Fraction(0)))
    assert s.contains(RealPower(Fraction(1, 2), Fraction(0)))
    assert s.contains(TrivialFinite(7, 0))
    assert s.contains(padic_point(5, 2, 0))
    assert not s.contains(TrivialRational(Fraction(1)))
    assert not s.contains(TrivialFinite(7, 1))
    assert not s.contains(padic_point(5, 2, 1))
    assert not s.contains(GenericTrivial())
    assert not s.contains(trivial_algebraic(poly.parse("t^2+1")))


def test_spectrum_integer_membership_matches_evaluation():
    # x belongs to the spectrum of m exactly when mu_x(t - m) = 0
    for m in (0, 2, -3, 6):
        s = spectrum_integer(m)
        witness = poly.parse(f"t-{m}") if m >= 0 else poly.parse(f"t+{-m}")
        probes = [TrivialRational(Fraction(m)), TrivialRational(Fraction(m + 1)),
                  RealPower(Fraction(1, 2), Fraction(m)),
                  RealPower(Fraction(1, 2), Fraction(m, 2) + 1),
                  TrivialFinite(5, m % 5), TrivialFinite(5, (m + 1) % 5),
                  padic_point(3, 1, m), padic_point(3, 1, m + 1)]
        for x in probes:
            assert s.contains(x) == (eval_point(x, witness) == mag.ZERO)


def test_spectrum_integer_explicit_points_all_members():
    s = spectrum_integer(6)
    assert s.explicit_points  # never empty
    for x in s.explicit_points:
        assert s.contains(x)
    assert s.to_json()["families"]


def test_spectrum_integer_residues_depend_on_prime():
    s = spectrum_integer(7)
    assert s.contains(TrivialFinite(2, 1))
    assert s.contains(TrivialFinite(3, 1))
    assert s.contains(TrivialFinite(7, 0))
    assert not s.contains(TrivialFinite(5, 3))


# ---------------------------------------------------------------------------
# Complex matrices
# ---------------------------------------------------------------------------


def to_mpc(v):
    if isinstance(v, (tuple, list)):
        re, im = Fraction(v[0]), Fraction(v[1])
        return mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator,
                          mpmath.mpf(im.numerator) / im.denominator)
    return mpmath.mpc(v)


def eig_oracle(rows):
    """Folded eigenvalues straight from mpmath.eig, as (re, im>=0) pairs."""
    with mpmath.workdps(40):
        m = mpmath.matrix([[to_mpc(v) for v in row] for row in rows])
        vals = mpmath.eig(m, left=False, right=False)
        return [(float(mpmath.re(v)), abs(float(mpmath.im(v)))) for v in vals]


def charpoly_cofactor(rows):
    """det(tI - A) by cofactor expansion over Q(i)[t]; independent oracle."""
    k = len(rows)

    def pmul(f, g):
        out = [(Fraction(0), Fraction(0))] * (len(f) + len(g) - 1)
        for i, (a, b) in enumerate(f):
            for j, (c, d) in enumerate(g):
                re, im = out[i + j]
                out[i + j] = (re + a * c - b * d, im + a * d + b * c)
        return out

    def padd(f, g, sign=1):
        n = max(len(f), len(g))
        f = f + [(Fraction(0), Fraction(0))] * (n - len(f))
        g = g + [(Fraction(0), Fraction(0))] * (n - len(g))
        return [(a + sign * c, b + sign * d) for (a, b), (c, d) in zip(f, g)]

    # entries of tI - A as polynomials in t
    ent = [[[(Fraction(-rows[i][j][0]), Fraction(-rows[i][j][1]))] +
            ([(Fraction(1), Fraction(0))] if i == j else [])
            for j in range(k)] for i in range(k)]

    def det(mat):
        n = len(mat)
        if n == 1:
            return mat[0][0]
        total = [(Fraction(0), Fraction(0))]
        for j in range(n):
            sub = [row[:j] + row[j + 1:] for row in mat[1:]]
            term = pmul(mat[0][j], det(sub))
            total = padd(total, term, sign=(-1) ** j)
        return total

    return det(ent)


def test_gauss_charpoly_matches_cofactor_oracle():
    rng = random.Random(17)
    for _ in range(10):
        k = rng.randint(1, 4)
        rows = [[(Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4)))
                 for _ in range(k)] for _ in range(k)]
        got = gauss_charpoly(rows)
        want = charpoly_cofactor(rows)
        assert got == want


def test_complex_rotation_matrix():
    pts = spectrum_complex_matrix([[0, -1], [1, 0]])  # eigenvalues +/- i
    assert len(pts) == 1
    assert points_equal(pts[0], complex_fold(Fraction(1), 0, 1, approx=True))


def test_complex_jordan_block_real_eigenvalue():
    pts = spectrum_complex_matrix([[1, 1], [0, 1]])
    assert len(pts) == 1
    assert isinstance(pts[0], RealPower) and abs(float(pts[0].t) - 1.0) < 1e-8


def test_complex_gaussian_diagonal_dedupes_conjugates():
    rows = [[(2, 3), (0, 0)], [(0, 0), (2, -3)]]
    pts = spectrum_complex_matrix(rows)
    assert len(pts) == 1
    assert points_equal(pts[0], complex_fold(Fraction(1), 2, 3, approx=True))


def test_complex_matches_eig_oracle():
    rng = random.Random(23)
    for _ in range(10):
        k = rng.randint(2, 3)
        rows = [[(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
                 for _ in range(k)] for _ in range(k)]
        pts = spectrum_complex_matrix(rows)
        got = sorted((float(x.re), float(x.im)) if not isinstance(x, RealPower)
                     else (float(x.t), 0.0) for x in pts)
        want = eig_oracle(rows)
        # every oracle eigenvalue lands within 1e-8 of a folded point
        for re, im in want:
            assert any(abs(re - a) < 1e-8 and abs(im - b) < 1e-8
                       for a, b in got)


def test_complex_conjugation_invariance():
    rng = random.Random(29)
    for _ in range(10):
        k = rng.randint(2, 3)
        rows = [[(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
                 for _ in range(k)] for _ in range(k)]
        a = spectrum_complex_matrix(rows)
        b = spectrum_complex_matrix(conjugate_matrix(rows))
        assert len(a) == len(b)
        for x in a:
            assert any(points_equal(x, y) for y in b)


def test_complex_rejects_bad_shapes():
    with pytest.raises(ValueError):
        spectrum_complex_matrix([[1, 2]])
    with pytest.raises(ValueError):
        spectrum_complex_matrix([[0] * 13 for _ in range(13)])


# ---------------------------------------------------------------------------
# Completely continuous operators
# ---------------------------------------------------------------------------


def test_cc_spectrum_shift_is_zero_only():
    s = spectrum_cc_operator(spec_from_json(SHIFT2), 6, 10)
    assert len(s.explicit_points) == 1
    assert s.explicit_points[0].s.valuation is None  # the zero point
    assert s.magnitude_only == ()


def test_cc_spectrum_diagonal():
    s = spectrum_cc_operator(spec_from_json(DIAG3), 4, 8)
    vals = sorted(x.s.valuation for x in s.explicit_points[1:])
    assert vals == [1, 2, 3, 4]  # magnitudes of the entries 3^i
    for x in s.explicit_points[1:]:
        # the degree-truncated determinant perturbs the exact zeros 3^-i,
        # but only within the unit part: every unit is still 1 mod 3
        assert x.s.unit % 3 == 1
    assert s.contains(s.explicit_points[1])
    assert not s.contains(padic_point(3, 1, 2))
    assert s.magnitude_only == ()


def test_cc_spectrum_exact_diagonal_block():
    # a finite block has an exact determinant, so the zeros lift exactly
    spec = OperatorSpec(3, "general", matrix=((Fraction(3), Fraction(0)),
                                              (Fraction(0), Fraction(9))))
    s = spectrum_cc_operator(spec, 2, 2)
    vals = sorted(x.s.valuation for x in s.explicit_points[1:])
    assert vals == [1, 2]
    for x in s.explicit_points[1:]:
        assert x.s.unit == 1
    assert s.contains(padic_point(3, 1, 3))
    assert s.contains(padic_point(3, 1, 9))
    assert not s.contains(padic_point(3, 1, 2))


def test_cc_spectrum_finite_rank():
    spec = OperatorSpec(2, "general", matrix=((Fraction(2), Fraction(0)),
                                              (Fraction(0), Fraction(0))))
    s = spectrum_cc_operator(spec, 2, 2)
    vals = [x.s.valuation for x in s.explicit_points[1:]]
    assert vals == [1]  # eigenvalue 2
    assert s.contains(padic_point(2, 1, 2))


def test_cc_spectrum_magnitude_only_for_non_integer_slope():
    # 1 - p t^2 has zeros of valuation -1/2, outside Q_p
    spec = OperatorSpec(3, "general",
                        matrix=((Fraction(0), Fraction(1)),
                                (Fraction(3), Fraction(0))))
    s = spectrum_cc_operator(spec, 2, 2)
    assert len(s.explicit_points) == 1
    assert s.magnitude_only == ((mag.exp_mag(3, Fraction(-1, 2)), 2),)


def test_cc_spectrum_json():
    s = spectrum_cc_operator(spec_from_json(DIAG3), 2, 6)
    doc = s.to_json()
    assert len(doc["explicit_points"]) == 3
    assert doc["magnitude_only"] == []


# ---------------------------------------------------------------------------
# Finite-rank cross-check
# ---------------------------------------------------------------------------


def test_crosscheck_examples():
    assert crosscheck_finite_rank(
        PadicMatrix.from_rationals(3, [[3, 0], [0, 9]]))
    assert crosscheck_finite_rank(
        PadicMatrix.from_rationals(2, [[0, 2], [0, 0]]))
    assert crosscheck_finite_rank(
        PadicMatrix.from_rationals(2, [[2, 1], [0, 4]]))


def test_crosscheck_random_upper_triangular():
    rng = random.Random(31)
    for _ in range(15):
        k = rng.randint(2, 4)
        p = rng.choice([2, 3, 5])
        rows = [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                rows[i][j] = Fraction(p ** rng.randint(1, 3) * rng.randint(-3, 3))
        assert crosscheck_finite_rank(PadicMatrix.from_rationals(p, rows))
