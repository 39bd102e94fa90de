import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from berkline import magnitude as mag
from berkline import polynomials as poly
from berkline.fields import padic_from_rational
from berkline.points import (ComplexFold, GenericTrivial, OpenConstraint,
                             PadicPower, RealPower, TrivialFinite,
                             TrivialRational, ZeroP, ZeroPInf, ZeroQ, ZeroR,
                             abs_point, base_point, complex_fold, eval_point,
                             in_ball, in_open_set, is_ultrametric, padic_point,
                             point_from_base, point_from_json, point_to_json,
                             points_equal, points_equal_report,
                             trivial_algebraic)


def test_eval_examples():
    assert eval_point(TrivialRational(Fraction(2, 3)), poly.parse("3t-2")) \
        == mag.ZERO
    assert eval_point(padic_point(2, 1, 6), poly.T) == mag.exp_mag(2, -1)
    alg = trivial_algebraic(poly.parse("t^2+1"))
    assert eval_point(alg, poly.parse("t^2+1")) == mag.ZERO
    assert eval_point(alg, poly.parse("t+2")) == mag.ONE
    assert eval_point(alg, poly.parse("t^4-1")) == mag.ZERO  # multiple
    assert eval_point(GenericTrivial(), ()) == mag.ZERO
    assert eval_point(GenericTrivial(), poly.parse("t^3-7")) == mag.ONE
    assert eval_point(TrivialFinite(5, 2), poly.parse("t-7")) == mag.ZERO
    assert eval_point(complex_fold(1, 0, 1), poly.parse("t^2+1")) == mag.ZERO
    assert eval_point(complex_fold(Fraction(1, 2), 1, 1), poly.T) \
        == mag.exp_mag(2, Fraction(1, 4))  # |1+i| = 2^(1/2)


def test_abs_point_examples():
    assert abs_point(RealPower(Fraction(1, 2), Fraction(4))) == mag.exp_mag(2, 1)
    assert abs_point(TrivialFinite(5, 0)) == mag.ZERO
    assert abs_point(padic_point(3, 2, Fraction(1, 3))) == mag.exp_mag(3, 2)


def test_base_point():
    assert base_point(padic_point(2, 3, 7)) == ZeroP(2, Fraction(3))
    assert base_point(TrivialFinite(7, 3)) == ZeroPInf(7)
    assert base_point(trivial_algebraic(poly.parse("t^2+1"))) == ZeroQ()
    assert base_point(RealPower(Fraction(1, 2), 0)) == ZeroR(Fraction(1, 2))
    assert base_point(complex_fold(Fraction(1, 3), 1, 2)) == ZeroR(Fraction(1, 3))


def test_points_equal():
    a = complex_fold(1, 1, 2)
    b = complex_fold(1, 1, -2)
    assert points_equal(a, b)
    rep = points_equal_report(TrivialRational(Fraction(1, 2)),
                              RealPower(Fraction(1), Fraction(1, 2)))
    assert not rep.equal and rep.witness is not None
    x, y = eval_point(TrivialRational(Fraction(1, 2)), rep.witness), \
        eval_point(RealPower(Fraction(1), Fraction(1, 2)), rep.witness)
    assert mag.mag_cmp(x, y) != 0
    assert points_equal(TrivialRational(Fraction(2, 3)),
                        TrivialRational(Fraction(2, 3)))


def test_padic_equality_precision_flag():
    from berkline.fields import PadicNumber
    a = PadicPower(2, Fraction(1), PadicNumber(2, 0, 5, 4))
    b = PadicPower(2, Fraction(1), PadicNumber(2, 0, 5 + 16, 8))
    rep = points_equal_report(a, b)
    assert rep.equal and not rep.certain


def test_is_ultrametric():
    assert not is_ultrametric(RealPower(Fraction(1), 3))
    assert not is_ultrametric(complex_fold(1, 0, 1))
    assert is_ultrametric(padic_point(2, 1, 5))
    assert is_ultrametric(GenericTrivial())
    assert is_ultrametric(TrivialFinite(3, 1))


def test_in_ball():
    assert in_ball(padic_point(2, 1, Fraction(1, 4)), 4)
    assert not in_ball(RealPower(Fraction(1), 5), 4)
    for r in (Fraction(0), Fraction(7, 3), Fraction(-12)):
        assert in_ball(TrivialRational(r), 1)


def test_in_open_set():
    c1 = OpenConstraint(poly.parse("t-2"), "lt", Fraction(1, 2))
    assert in_open_set(TrivialRational(Fraction(2)), [c1])
    c2 = OpenConstraint(poly.T, "gt", Fraction(1, 2))
    assert in_open_set(padic_point(2, 1, 1), [c2])
    c3 = OpenConstraint(poly.parse("2"), "lt", Fraction(1))
    assert not in_open_set(RealPower(Fraction(1), 1), [c3])


def test_point_json_round_trip():
    pts = [TrivialRational(Fraction(-7, 3)),
           trivial_algebraic(poly.parse("t^2+1")),
           GenericTrivial(),
           TrivialFinite(5, 3),
           RealPower(Fraction(2, 3), Fraction(9, 4)),
           complex_fold(Fraction(1, 2), Fraction(1, 3), Fraction(-2)),
           padic_point(3, Fraction(5, 2), Fraction(7, 6))]
    for x in pts:
        assert points_equal(point_from_json(point_to_json(x)), x)


def test_point_from_base():
    for bp in (ZeroQ(), ZeroR(Fraction(1, 2)), ZeroP(2, Fraction(3)),
               ZeroPInf(5)):
        x = point_from_base(bp)
        assert abs_point(x) == mag.ZERO
        assert base_point(x) == bp


def test_folding_idempotent():
    a = complex_fold(Fraction(1), Fraction(2), Fraction(3))
    b = complex_fold(Fraction(1), Fraction(2), Fraction(-3))
    assert points_equal(a, b)
    # real z collapses onto the real branch
    assert isinstance(complex_fold(1, Fraction(1, 2), 0), RealPower)


def test_degenerate_constructions():
    with pytest.raises(ValueError):
        trivial_algebraic(poly.parse("t^2-1"))  # reducible
    assert isinstance(trivial_algebraic(poly.parse("2t-3")), TrivialRational)
    with pytest.raises(ValueError):
        RealPower(Fraction(3, 2), 0)
    with pytest.raises(ValueError):
        padic_point(4, 1, 1)


small_polys = st.lists(st.integers(min_value=-9, max_value=9),
                       min_size=0, max_size=5).map(poly.normalize)
ultra_points = st.one_of(
    st.fractions(min_value=-9, max_value=9, max_denominator=9).map(TrivialRational),
    st.just(GenericTrivial()),
    st.tuples(st.sampled_from([2, 3, 5]), st.integers(0, 6)).map(
        lambda t: TrivialFinite(t[0], t[1])),
    st.tuples(st.sampled_from([2, 3, 5]),
              st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=4),
              st.fractions(min_value=-9, max_value=9, max_denominator=9)).map(
        lambda t: padic_point(t[0], t[1], t[2])))
arch_points = st.one_of(
    st.tuples(st.fractions(min_value=Fraction(1, 4), max_value=1, max_denominator=4),
              st.fractions(min_value=-9, max_value=9, max_denominator=9)).map(
        lambda t: RealPower(t[0], t[1])),
    st.tuples(st.fractions(min_value=Fraction(1, 4), max_value=1, max_denominator=4),
              st.fractions(min_value=-4, max_value=4, max_denominator=4),
              st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=4)).map(
        lambda t: ComplexFold(t[0], t[1], t[2])))


@settings(max_examples=200, deadline=None)
@given(ultra_points, small_polys, small_polys)
def test_ultrametric_multiplicativity_and_max(x, p, q):
    vp_, vq = eval_point(x, p), eval_point(x, q)
    assert eval_point(x, poly.mul(p, q)) == mag.mag_mul(vp_, vq)
    vs = eval_point(x, poly.add(p, q))
    if not vs.is_zero:
        biggest = vp_ if (vq.is_zero or
                          (not vp_.is_zero and mag.mag_cmp(vp_, vq) >= 0)) else vq
        assert mag.mag_cmp(vs, biggest) <= 0


@settings(max_examples=150, deadline=None)
@given(arch_points, small_polys, small_polys)
def test_archimedean_multiplicativity(x, p, q):
    vp_, vq = eval_point(x, p), eval_point(x, q)
    vpq = eval_point(x, poly.mul(p, q))
    want = mag.mag_mul(vp_, vq)
    if vpq.is_zero or want.is_zero:
        assert vpq.is_zero and want.is_zero
    else:
        assert math.isclose(vpq.to_float(), want.to_float(), rel_tol=2.0 ** -30)


@settings(max_examples=100, deadline=None)
@given(st.one_of(ultra_points, arch_points))
def test_unit_and_zero(x):
    assert eval_point(x, (1,)) == mag.ONE
    assert eval_point(x, ()) == mag.ZERO


@settings(max_examples=100, deadline=None)
@given(st.one_of(ultra_points, arch_points), st.integers(-20, 20))
def test_base_point_consistent_on_constants(x, c):
    from berkline.fields import Fp, Q0, Qpw, Rv, abs_value, padic_from_rational
    bp = base_point(x)
    if isinstance(bp, ZeroQ):
        want = abs_value(Q0(), c)
    elif isinstance(bp, ZeroR):
        want = abs_value(Rv(bp.upsilon), c)
    elif isinstance(bp, ZeroP):
        want = abs_value(Qpw(bp.p, bp.omega), padic_from_rational(bp.p, c))
    else:
        want = abs_value(Fp(bp.p), c)
    got = eval_point(x, poly.constant(c))
    if got.is_exact and want.is_exact:
        assert mag.mag_cmp(got, want) == 0 if not (got.is_zero or want.is_zero) \
            else got.is_zero == want.is_zero
    else:
        assert math.isclose(got.to_float(), want.to_float(), rel_tol=2.0 ** -30)
