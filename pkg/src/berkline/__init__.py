"""Exact computation on the Berkovich affine line over Z.

Seminorm values (magnitude), minimal complete valuation fields and exact
p-adic numbers (fields), concrete points with evaluation and membership
(points), symbolic convergence predicates (sequences), the planar picture
of the zero-norm ball (mzpicture), p-adic operators (operators), Fredholm
determinants and Newton polygons (fredholm), and computable Berkovich
spectra (spectra).
"""

from .errors import (BerklineError, DivisorCollision, DomainError,
                     IdentityViolation, IllConditioned, IndeterminateValuation,
                     NotContractive, PrecisionError, PrecisionExhausted,
                     TruncationInsufficient, UnsupportedDescriptor,
                     ZeroToZeroPower)
from .fields import (Fp, PadicNumber, Q0, Qpw, Rv, abs_value,
                     padic_from_rational, padic_zero, residue_bracket, vp)
from .fredholm import (FredholmSeries, NewtonPolygon, Segment, check_zero_bound,
                       find_rational_zeros, fredholm_coeffs, fredholm_resolvent,
                       newton_polygon, newton_polygon_of_valuations,
                       zero_valuations)
from .magnitude import (Magnitude, ONE, ZERO, approx_mag, exp_mag, from_rational,
                        mag_close, mag_cmp, mag_le, mag_max, mag_mul, mag_pow,
                        mag_reciprocal)
from .mzpicture import mz_structure, threshold_omega
from .operators import (DecayCertificate, EntryRule, OperatorSpec, PadicMatrix,
                        mat_pow, neumann_inverse, op_norm, parse_entry_rule,
                        spec_from_json, spectral_radius, truncate)
from .points import (BasePoint, ComplexFold, GenericTrivial, OpenConstraint,
                     PadicPower, Point, RealPower, TrivialAlgebraic,
                     TrivialFinite, TrivialRational, ZeroP, ZeroPInf, ZeroQ,
                     ZeroR, abs_point, base_point, complex_fold, eval_point,
                     in_ball, in_open_set, is_ultrametric, padic_point,
                     point_from_base, point_from_json, point_to_json,
                     points_equal, points_equal_report, trivial_algebraic)
from .sequences import (ElementFormula, ExponentFormula, PrimeFormula,
                        SequenceDescriptor, converges_to, descriptor_from_json,
                        descriptor_to_json, instantiate, instantiate_prefix,
                        numeric_limit_check)
from .spectra import (SpectrumDescription, crosscheck_finite_rank,
                      spectrum_cc_operator, spectrum_complex_matrix,
                      spectrum_integer)

__version__ = "0.1.0"
