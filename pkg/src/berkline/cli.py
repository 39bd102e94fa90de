"""Command-line interface.

Every subcommand reads JSON (inline or from a file), prints a JSON
document, and exits 0 on success, 1 on input validation errors, 2 on
domain errors, and 3 on precision errors.  The report-producing paths
(mz-picture, fredholm) optionally render a figure and a CSV next to the
JSON output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import magnitude as mag
from . import polynomials as poly
from .errors import BerklineError, DomainError, PrecisionError
from .fredholm import (check_zero_bound, find_rational_zeros, fredholm_coeffs,
                       fredholm_resolvent, newton_polygon, zero_valuations)
from .mzpicture import mz_structure
from .operators import PadicMatrix, op_norm, spec_from_json, spectral_radius
from .points import (OpenConstraint, abs_point, base_point, base_to_json,
                     eval_point, in_ball, in_open_set, is_ultrametric,
                     point_from_json, point_to_json)
from .sequences import (converges_to, descriptor_from_json, instantiate_prefix,
                        numeric_limit_check)
from .spectra import (crosscheck_finite_rank, spectrum_cc_operator,
                      spectrum_complex_matrix, spectrum_integer)

DEFAULT_MAX_MINOR_DIM = 24


def _load_json(text: str):
    """Inline JSON, or the contents of a file when the text names one."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        if os.path.exists(text):
            with open(text) as fh:
                return json.load(fh)
        raise


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _max_minor_dim() -> int:
    try:
        return int(os.environ.get("BERKLINE_MAX_MINOR_DIM", DEFAULT_MAX_MINOR_DIM))
    except ValueError:
        return DEFAULT_MAX_MINOR_DIM


def _check_truncation(n: int) -> int:
    cap = _max_minor_dim()
    if n > cap:
        raise ValueError(
            f"truncation {n} exceeds the cap {cap} (BERKLINE_MAX_MINOR_DIM)")
    return n


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_eval(args):
    x = point_from_json(_load_json(args.point), args.precision)
    p = poly.parse(args.poly)
    _emit({"value": eval_point(x, p).to_json()})


def _cmd_classify(args):
    x = point_from_json(_load_json(args.point), args.precision)
    _emit({"kind": point_to_json(x)["kind"],
           "ultrametric": is_ultrametric(x),
           "abs": abs_point(x).to_json()})


def _cmd_base(args):
    x = point_from_json(_load_json(args.point), args.precision)
    _emit({"base_point": base_to_json(base_point(x))})


def _cmd_ball(args):
    x = point_from_json(_load_json(args.point), args.precision)
    _emit({"in_ball": in_ball(x, Fraction(args.radius))})


def _cmd_open_set(args):
    x = point_from_json(_load_json(args.point), args.precision)
    cons = [OpenConstraint(poly.parse(c["poly"]), c["cmp"], Fraction(c["bound"]))
            for c in _load_json(args.constraints)]
    _emit({"in_open_set": in_open_set(x, cons)})


def _cmd_converge(args):
    desc = descriptor_from_json(_load_json(args.descriptor))
    target = point_from_json(_load_json(args.target), args.precision)
    result = converges_to(desc, target)
    doc = {"converges": result}
    if args.check_prefix:
        pts = instantiate_prefix(desc, args.check_prefix, args.precision)
        polys = [poly.parse(s) for s in (args.poly or ["t", "t+1", "2"])]
        rep = numeric_limit_check(pts, target, polys, args.tol)
        doc["numeric"] = {
            "max_deviation": rep.max_deviation,
            "within_tol": rep.within_tol,
            "deviations": {poly.to_str(q): d for q, d in rep.deviations.items()},
        }
    _emit(doc)


def _cmd_mz_picture(args):
    thresholds = []
    for spec in args.threshold or []:
        k, eps = spec.split(":")
        thresholds.append((int(k), Fraction(eps)))
    data = mz_structure(args.primes_upto,
                        [Fraction(u) for u in (args.upsilon or ["1", "1/2"])],
                        [Fraction(w) for w in (args.omega or ["1/2", "1", "2"])],
                        thresholds)
    if args.figure:
        from .plotting import render_mz_picture
        render_mz_picture(data, args.figure)
        data["figure"] = args.figure
    if args.csv:
        from .plotting import write_mz_csv
        write_mz_csv(data, args.csv)
        data["csv"] = args.csv
    _emit(data)


def _cmd_norm(args):
    spec = spec_from_json(_load_json(args.spec))
    _emit({"norm": op_norm(spec).to_json()})


def _cmd_radius(args):
    spec = spec_from_json(_load_json(args.spec))
    n = _check_truncation(args.truncation)
    rep = spectral_radius(spec, n_max=args.n_max, n=n, precision=args.precision)
    _emit({"estimate": rep.estimate.to_json(),
           "sequence": [m.to_json() for m in rep.sequence],
           "converged": rep.converged})


def _cmd_fredholm(args):
    spec = spec_from_json(_load_json(args.spec))
    n = _check_truncation(args.truncation)
    series = fredholm_coeffs(spec, args.degree, n, args.precision)
    ng = newton_polygon(series)
    zeros = zero_valuations(ng, spec.p)
    roots = find_rational_zeros(series, args.precision)
    bound = check_zero_bound(series, spec)
    resolvent = fredholm_resolvent(series, spec, args.degree, n, args.precision)
    doc = {
        "series": series.to_json(),
        "polygon": ng.to_json(),
        "zeros": [{"magnitude": m.to_json(), "count": c} for m, c in zeros],
        "roots": [{"value": str(t), "valuation": t.valuation,
                   "residual_valuation": r}
                  for t, r in zip(roots.roots, roots.residuals)],
        "valuation_only": [{"slope": str(s), "count": c}
                           for s, c in roots.valuation_only],
        "bound_check": {
            "holds": bound.holds,
            "min_zero": None if bound.min_zero is None else bound.min_zero.to_json(),
            "inv_radius": None if bound.inv_radius is None
            else bound.inv_radius.to_json(),
        },
        "resolvent_verified": resolvent.verified,
    }
    if args.figure:
        from .plotting import render_newton_polygon
        render_newton_polygon(doc["polygon"], spec.p, args.figure)
        doc["figure"] = args.figure
    if args.csv:
        from .plotting import write_fredholm_csv
        write_fredholm_csv(doc["series"], doc["polygon"], args.csv)
        doc["csv"] = args.csv
    _emit(doc)


def _cmd_spectrum(args):
    if args.kind == "integer":
        desc = spectrum_integer(int(args.input))
        _emit({"spectrum": desc.to_json()})
    elif args.kind == "complex-matrix":
        rows = _load_json(args.input)
        pts = spectrum_complex_matrix(rows, tol=args.tol)
        _emit({"points": [point_to_json(x) for x in pts]})
    elif args.kind == "operator-spec":
        spec = spec_from_json(_load_json(args.input))
        n = _check_truncation(args.truncation)
        desc = spectrum_cc_operator(spec, args.degree, n, args.precision)
        _emit({"spectrum": desc.to_json()})
    else:
        raise ValueError(f"unknown spectrum kind {args.kind!r}")


def _cmd_crosscheck(args):
    doc = _load_json(args.matrix)
    m = PadicMatrix.from_rationals(doc["p"], [[Fraction(v) for v in row]
                                              for row in doc["rows"]],
                                   args.precision)
    _emit({"consistent": crosscheck_finite_rank(m, precision=args.precision)})


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="berkline",
        description="Exact computation on the Berkovich affine line over Z")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--precision", type=int, default=32,
                       help="p-adic working digits (default 32)")
        return p

    p = common(sub.add_parser("eval", help="evaluate a seminorm on a polynomial"))
    p.add_argument("--point", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=_cmd_eval)

    p = common(sub.add_parser("classify", help="variant, ultrametricity and |x|"))
    p.add_argument("--point", required=True)
    p.set_defaults(func=_cmd_classify)

    p = common(sub.add_parser("base", help="restriction to the constants"))
    p.add_argument("--point", required=True)
    p.set_defaults(func=_cmd_base)

    p = common(sub.add_parser("ball", help="membership in the closed ball"))
    p.add_argument("--point", required=True)
    p.add_argument("--radius", required=True)
    p.set_defaults(func=_cmd_ball)

    p = common(sub.add_parser("open-set", help="membership in a basic open set"))
    p.add_argument("--point", required=True)
    p.add_argument("--constraints", required=True,
                   help='JSON list of {"poly","cmp":"lt"|"gt","bound"}')
    p.set_defaults(func=_cmd_open_set)

    p = common(sub.add_parser("converge", help="symbolic convergence predicate"))
    p.add_argument("--descriptor", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--check-prefix", type=int, default=0,
                   help="also run a numeric check on this many points")
    p.add_argument("--poly", action="append")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("mz-picture", help="picture data for the zero-norm ball")
    p.add_argument("--primes-upto", type=int, required=True)
    p.add_argument("--upsilon", action="append")
    p.add_argument("--omega", action="append")
    p.add_argument("--threshold", action="append", metavar="K:EPS")
    p.add_argument("--figure", help="render a PNG to this path")
    p.add_argument("--csv", help="write coordinates as CSV to this path")
    p.set_defaults(func=_cmd_mz_picture)

    p = common(sub.add_parser("norm", help="operator norm of a specification"))
    p.add_argument("--spec", required=True)
    p.set_defaults(func=_cmd_norm)

    p = common(sub.add_parser("radius", help="spectral radius report"))
    p.add_argument("--spec", required=True)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--truncation", type=int, default=16)
    p.set_defaults(func=_cmd_radius)

    p = common(sub.add_parser("fredholm", help="determinant, polygon, zeros"))
    p.add_argument("--spec", required=True)
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--truncation", type=int, default=12)
    p.add_argument("--figure", help="render the Newton polygon to this path")
    p.add_argument("--csv", help="write coefficients and slopes as CSV")
    p.set_defaults(func=_cmd_fredholm)

    p = common(sub.add_parser("spectrum", help="Berkovich spectrum"))
    p.add_argument("--kind", required=True,
                   choices=["integer", "complex-matrix", "operator-spec"])
    p.add_argument("--input", required=True)
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--truncation", type=int, default=12)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_spectrum)

    p = common(sub.add_parser("crosscheck",
                              help="finite-rank spectrum consistency"))
    p.add_argument("--matrix", required=True,
                   help='JSON {"p": prime, "rows": [[...], ...]}')
    p.set_defaults(func=_cmd_crosscheck)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
        return 0
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 1
    except DomainError as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 2
    except PrecisionError as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 3
    except BerklineError as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 2


if __name__ == "__main__":
    sys.exit(main())
