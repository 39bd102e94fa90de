"""Exception hierarchy shared across the package."""


class BerklineError(Exception):
    """Base class for all library errors."""


class DomainError(BerklineError):
    """Input is outside the mathematical domain of the operation."""


class PrecisionError(BerklineError):
    """A result exists but cannot be certified at the working precision."""


class ZeroToZeroPower(DomainError):
    pass


class PrecisionExhausted(PrecisionError):
    """Interval refinement hit the configured depth without a decision."""


class IndeterminateValuation(PrecisionError):
    """A p-adic value cancelled beyond the known digits."""


class DivisorCollision(DomainError):
    """Residue bracket [m/n]_q requested with q dividing n."""


class UnsupportedDescriptor(DomainError):
    """Sequence descriptor outside the supported closed-form grammar."""


class TruncationInsufficient(DomainError):
    """Operator truncation too small for the requested computation."""


class NotContractive(DomainError):
    """Neumann series requested for x with ||1 - x|| >= 1."""


class IdentityViolation(BerklineError):
    """The Fredholm resolvent identity failed; signals an internal bug."""


class IllConditioned(PrecisionError):
    """Complex eigenvalue refinement failed to reach tolerance."""
