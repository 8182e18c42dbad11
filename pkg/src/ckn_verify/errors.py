"""Exception types shared across modules (both kernel lanes raise these)."""


class KummerDomainError(ValueError):
    """Parameters outside the domain of the confluent hypergeometric series."""


class KummerConvergenceError(RuntimeError):
    """Series did not reach tolerance within the iteration cap."""


class QuadratureError(RuntimeError):
    """Base class for quadrature failures."""


class QuadratureConvergenceError(QuadratureError):
    """Refinement limit reached before the error estimate met tolerance."""


class TailDecayError(QuadratureError):
    """Integrand does not decay at a window endpoint (divergent or mis-windowed)."""


class FamilyError(ValueError):
    """Extremizer family preconditions violated (signs, admissibility, region)."""
