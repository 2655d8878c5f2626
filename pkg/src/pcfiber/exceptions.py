"""Exception types raised by pcfiber."""


class PcfiberError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PcfiberError, ValueError):
    """Malformed or invalid input data (bad rows, duplicate points, ...)."""


class DegenerateSimplex(PcfiberError, ValueError):
    """A simplex whose points are affinely dependent where independence is required."""


class DomainError(PcfiberError, ValueError):
    """The configuration lies outside the regime a test is defined for.

    Raised by rank-based rigidity tests when ``n < d + 1`` or when the
    configuration does not affinely span the ambient space.
    """


class NotApplicable(PcfiberError):
    """A theorem's hypotheses are not met, so the check has no verdict."""


class HypothesisViolated(PcfiberError, ValueError):
    """The counting hypothesis of the complete-hypergraph rigidity check fails."""


class ComplexTooLarge(PcfiberError):
    """The filtered complex would exceed the configured simplex budget."""


class AngleViolation(PcfiberError, ValueError):
    """A chain construction breaks the pairwise direction-angle condition."""
