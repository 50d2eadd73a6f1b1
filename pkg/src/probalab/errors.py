"""Exception and warning types shared across the package."""


class ProbalabError(Exception):
    """Base class for all package errors."""


class DomainError(ProbalabError):
    """A parameter lies outside its admissible domain."""


class UndefinedMomentError(ProbalabError):
    """A required moment does not exist for the law (e.g. Cauchy mean)."""


class NonNegativityViolation(ProbalabError):
    """Operation requires a law supported on [0, inf)."""


class DivergentTail(ProbalabError):
    """Tail quadrature failed to converge."""


class InvalidOrder(ProbalabError):
    """Lp order p < 1."""


class UnsupportedComponent(ProbalabError):
    """Singular-continuous mixture component requested."""


class QuadratureFailure(ProbalabError):
    """Numerical integration did not reach the requested tolerance."""


class NotAbsolutelyContinuous(ProbalabError):
    """Density inversion requires an integrable characteristic function."""


class GridTooCoarse(ProbalabError):
    """Gridded convolution missed the normalization tolerance."""


class ConvergenceFailure(ProbalabError):
    """Iterative solver exceeded its sweep budget."""


class SingularCovariance(ProbalabError):
    """Covariance matrix is singular where invertibility is required."""


class ShapeMismatch(ProbalabError):
    """Incompatible matrix/vector shapes."""


class NonZeroCrossCovariance(ProbalabError):
    """Block-independence check requires an exactly zero cross block."""


class NotPositiveSemidefinite(ProbalabError):
    """Covariance function produced a non-PSD Gram matrix."""


class NegativeSupport(ProbalabError):
    """Samples or law extend below zero where nonnegativity is required."""


class ZeroDenominator(ProbalabError):
    """Bound denominator vanished (e.g. g(a) = 0)."""


class ConjugateMismatch(ProbalabError):
    """Hoelder exponents do not satisfy 1/p + 1/q = 1."""


class ConvexityViolation(ProbalabError):
    """Midpoint spot-check found phi non-convex."""


class TooManyEvents(ProbalabError):
    """Inclusion-exclusion limited to n <= 20 events."""


class UnboundedForLowerBound(ProbalabError):
    """Kolmogorov maximal lower bound needs a.s. bounded summands."""


class EmptyCell(ProbalabError):
    """Conditional expectation is undefined on an empty cell."""


class NotARefinement(ProbalabError):
    """Tower check requires the fine partition to refine the coarse one."""


class IncoherentFamily(ProbalabError):
    """Finite-dimensional family violates a coherence condition."""


class SaturationError(ProbalabError):
    """Poisson path generation hit its hard inter-arrival cap."""


class TruncationWarning(UserWarning):
    """Tail mass beyond the truncation point exceeds tolerance."""
