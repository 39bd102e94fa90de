"""Integer polynomials in one variable t, stored as coefficient tuples.

Coefficients are listed from the constant term upward and are plain
Python ints.  The zero polynomial is the empty tuple.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

IntPoly = tuple

T = (0, 1)  # the variable t itself


def normalize(coeffs) -> IntPoly:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(int(c) for c in cs)


def degree(p: IntPoly) -> int:
    return len(p) - 1


def is_zero(p: IntPoly) -> bool:
    return len(p) == 0


def constant(c: int) -> IntPoly:
    return normalize((c,))


def add(p: IntPoly, q: IntPoly) -> IntPoly:
    n = max(len(p), len(q))
    return normalize(tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)))


def mul(p: IntPoly, q: IntPoly) -> IntPoly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def content(p: IntPoly) -> int:
    g = 0
    for c in p:
        g = gcd(g, abs(c))
    return g


def primitive_part(p: IntPoly) -> IntPoly:
    if not p:
        return ()
    g = content(p)
    cs = tuple(c // g for c in p)
    if cs[-1] < 0:
        cs = tuple(-c for c in cs)
    return cs


def eval_fraction(p: IntPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_mod(p: IntPoly, x: int, m: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = (acc * x + c) % m
    return acc


def eval_gauss(p: IntPoly, re_x: Fraction, im_x: Fraction) -> tuple:
    """Evaluate at the Gaussian rational re_x + i*im_x."""
    acc_re, acc_im = Fraction(0), Fraction(0)
    for c in reversed(p):
        acc_re, acc_im = acc_re * re_x - acc_im * im_x + c, acc_re * im_x + acc_im * re_x
    return acc_re, acc_im


def divides(d: IntPoly, p: IntPoly) -> bool:
    """Whether d divides p over the rationals (d nonzero)."""
    if is_zero(p):
        return True
    if degree(p) < degree(d):
        return False
    rem = [Fraction(c) for c in p]
    dlead = Fraction(d[-1])
    for i in range(len(rem) - 1, len(d) - 2, -1):
        q = rem[i] / dlead
        if q:
            for j, dc in enumerate(d):
                rem[i - (len(d) - 1) + j] -= q * dc
    return all(c == 0 for c in rem[: len(d) - 1])


_TERM_RE = re.compile(r"([+-]?)\s*(\d+)?\s*(?:\*\s*)?(t)?(?:\^(\d+))?")


def parse(text: str) -> IntPoly:
    """Parse strings like "3t-2", "t^2+1", "-5", "2*t^3 - t"."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign, num, var, power = m.groups()
        if num is None and var is None:
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        coef = int(num) if num is not None else 1
        if sign == "-":
            coef = -coef
        if var is None:
            deg = 0
        else:
            deg = int(power) if power is not None else 1
        coeffs[deg] = coeffs.get(deg, 0) + coef
        pos = m.end()
    top = max(coeffs)
    return normalize(tuple(coeffs.get(i, 0) for i in range(top + 1)))


def to_str(p: IntPoly) -> str:
    if is_zero(p):
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + ("t" if i == 1 else f"t^{i}")
        parts.append(sign + body)
    return "".join(parts)
