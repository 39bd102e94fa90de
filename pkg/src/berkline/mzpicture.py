"""Planar picture of the Berkovich spectrum of Z (the zero-norm ball).

The space is a segment of real-branch zeros 0_R^upsilon joined at the
trivial zero 0_Q to one arc per prime, each arc carrying the p-adic zeros
0_p^omega and ending at the finite-field zero 0_p^inf.  The figure is
determined up to homeomorphism; this layout puts the segment on [0, 2] of
the x-axis (0_R^1 at the origin, 0_Q at (2, 0)) and draws the arc for the
j-th prime as a half circle of radius 2/j through 0_Q, so radii decrease
and the arcs accumulate at 0_Q.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .fields import primes_upto as _primes_upto


def threshold_omega(k: int, epsilon, p: int) -> float:
    """The exponent below which |1 - |k| ** omega| < epsilon at p.

    omega_{k, eps, p} = ln(1 - eps) / (-k * ln p); the p-adic zero 0_p^omega
    lies in the epsilon-neighborhood of 0_Q determined by the constant k
    exactly when omega < this threshold.
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if k < 1:
        raise ValueError("k must be a positive integer")
    return math.log(1 - epsilon) / (-k * math.log(p))


def _segment_x(upsilon: Fraction) -> float:
    return float(2 * (1 - upsilon))


def _arc_xy(radius: float, t: float) -> tuple:
    """Point at arc fraction t in [0, 1]; t=0 is 0_Q, t=1 the endpoint."""
    return (2.0 + radius * math.sin(math.pi * t),
            radius * (1.0 - math.cos(math.pi * t)))


def mz_structure(primes_bound: int, upsilon_samples=(), omega_samples=(),
                 thresholds=()) -> dict:
    """Coordinates for the picture of the zero-norm ball.

    Returns the real segment with the requested upsilon sample points, the
    junction 0_Q, and one arc per prime q <= primes_bound with the
    requested omega sample points and the endpoint 0_q^inf; arc position of
    0_q^omega uses the fraction 1 - q^(-omega), which sends omega -> 0 to
    the junction and omega -> inf to the endpoint.  ``thresholds`` is a
    list of (k, epsilon) pairs evaluated at every prime.
    """
    if primes_bound < 2:
        raise ValueError("primes_bound must be at least 2")
    ups = sorted({Fraction(u) for u in upsilon_samples}, reverse=True)
    if any(not 0 < u <= 1 for u in ups):
        raise ValueError("upsilon samples must lie in (0, 1]")
    oms = sorted({Fraction(w) for w in omega_samples})
    if any(w <= 0 for w in oms):
        raise ValueError("omega samples must be positive")

    segment = {
        "start": {"label": "0_R^1", "x": 0.0, "y": 0.0},
        "end": {"label": "0_Q", "x": 2.0, "y": 0.0},
        "samples": [{"upsilon": str(u), "label": f"0_R^{u}",
                     "x": _segment_x(u), "y": 0.0} for u in ups],
    }

    arcs = []
    for j, q in enumerate(_primes_upto(primes_bound), start=1):
        radius = 2.0 / j
        samples = []
        for w in oms:
            t = 1.0 - float(q) ** float(-w)
            x, y = _arc_xy(radius, t)
            samples.append({"omega": str(w), "label": f"0_{q}^{w}",
                            "x": x, "y": y})
        ex, ey = _arc_xy(radius, 1.0)
        arcs.append({
            "p": q, "index": j, "radius": radius,
            "anchor": {"label": "0_Q", "x": 2.0, "y": 0.0},
            "samples": samples,
            "endpoint": {"label": f"0_{q}^inf", "x": ex, "y": ey},
        })

    rows = []
    for (k, eps) in thresholds:
        eps = Fraction(eps)
        for arc in arcs:
            rows.append({"k": int(k), "epsilon": str(eps), "p": arc["p"],
                         "omega": threshold_omega(int(k), eps, arc["p"])})

    return {"zero_q": {"label": "0_Q", "x": 2.0, "y": 0.0},
            "segment": segment, "arcs": arcs, "thresholds": rows}
