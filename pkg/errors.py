# ============================================================================
# EXCEPTIONS
# ============================================================================

class SusyToolkitError(Exception):
    """Base class for every error raised by the toolkit."""


class InvalidArgumentError(SusyToolkitError, ValueError):
    """Bad sizes, mismatched grids, out-of-range parameters."""


class DomainError(SusyToolkitError, ValueError):
    """A function was evaluated outside its domain or produced non-finite values."""


class SingularityError(DomainError):
    """A denominator vanished (e.g. x = c in case II, or [℘ + E_R/3] = 0)."""


class UnsupportedRegimeError(SusyToolkitError):
    """The Weierstrass data lies in a regime the potentials are not built for."""

    def __init__(self, message, discriminant=None):
        super().__init__(message)
        self.discriminant = discriminant


class BracketError(SusyToolkitError, ValueError):
    """A bracket holds neither a sign change nor an interior minimum."""


class IntegrationOverflowError(SusyToolkitError, OverflowError):
    """The integrated state became non-finite.

    Attributes:
        index: Grid index at which the non-finite state was produced.
    """

    def __init__(self, index, message=None):
        super().__init__(message or f"non-finite state at grid index {index}")
        self.index = index


class SolverError(SusyToolkitError):
    """The shooting solver could not produce a usable result."""
