"""Exception types shared across the package."""


class HarmonicMapsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HarmonicMapsError):
    """A point lies outside the declared domain of validity."""


class SingularDerivativeError(HarmonicMapsError):
    """An operation required a nonvanishing derivative but found (numerically) zero."""


class InversionError(HarmonicMapsError):
    """Newton inversion failed to converge.

    Carries the target point and the best residual reached so the caller can
    decide whether to retry with a different seed or a coarser tolerance.
    """

    def __init__(self, message, w=None, best_residual=None):
        super().__init__(message)
        self.w = w
        self.best_residual = best_residual


class BudgetExceededError(HarmonicMapsError):
    """A requested perturbation size is not covered by the univalence budget."""


class InapplicableError(HarmonicMapsError):
    """Hypotheses of a bound are not met (e.g. nonpositive derivative gap)."""


class GalleryLookupError(HarmonicMapsError, KeyError):
    """Unknown gallery name or missing/invalid parameters."""
