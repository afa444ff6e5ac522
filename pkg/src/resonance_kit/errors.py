"""Exception hierarchy shared by every module.

The CLI maps :class:`InputFormatError` to exit status 2 and
:class:`PreconditionError` to exit status 3.
"""


class ResonanceKitError(Exception):
    """Base class for all errors raised by this package."""


class InputFormatError(ResonanceKitError, ValueError):
    """Malformed input: bad JSON, unknown kind, unparsable polynomial."""


class PreconditionError(ResonanceKitError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class FieldMismatchError(PreconditionError, TypeError):
    """Scalars from different fields were combined."""


class RingMismatchError(PreconditionError):
    """Polynomials from different rings were combined."""


class SmallMatrixError(PreconditionError):
    """Resonance needs a skew matrix of size at least 4."""


class ConsistencyError(ResonanceKitError, AssertionError):
    """Two independent computations of the same fact disagree."""
