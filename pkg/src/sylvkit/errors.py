"""Exception hierarchy.

Every failure a solver or checker declares derives from :class:`SylvkitError`,
so callers (and the command line front end) can separate declared failures
from programming errors.
"""


class SylvkitError(Exception):
    """Base class for all declared failures."""


class DimensionMismatch(SylvkitError, ValueError):
    pass


class NonFiniteEntries(SylvkitError, ValueError):
    pass


class SingularMatrix(SylvkitError):
    """A pivot fell below the rank tolerance.

    ``factor`` optionally names which coefficient was singular.
    """

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class NoConvergence(SylvkitError):
    pass


class InvalidIndex(SylvkitError, ValueError):
    pass


class NotHermitianPSD(SylvkitError, ValueError):
    pass


class SpectraNotDisjoint(SylvkitError):
    pass


class NoSeparatingCircle(SylvkitError):
    pass


class SingularPencil(SylvkitError):
    pass


class QuadratureNotConverged(SylvkitError):
    """Budget exhausted; ``report`` carries the best iterate found."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SpectralRadiusTooLarge(SylvkitError):
    pass


class NotHalfplaneSeparated(SylvkitError):
    pass


class NotAnnulusSeparated(SylvkitError):
    pass


class InconsistentSystem(SylvkitError):
    pass


class NotIntertwining(SylvkitError):
    pass


class GramBlockSingular(SylvkitError):
    pass


class FPHypothesisFails(SylvkitError):
    pass


class NotASolution(SylvkitError):
    pass


class HypothesisViolated(SylvkitError):
    pass


class ParseError(SylvkitError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedFormat(SylvkitError):
    pass
