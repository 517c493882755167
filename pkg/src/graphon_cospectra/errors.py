"""Exception hierarchy.

Input problems and refused preconditions are ``ValueError`` subclasses so the
CLI can map them to exit code 2; numerical breakdowns are ``RuntimeError``.
"""


class GraphonError(ValueError):
    """Malformed graphon, graph, or serialized document."""


class GuardExceeded(ValueError):
    """An enumeration would exceed its configured size bound."""


class Refusal(ValueError):
    """A precondition of the requested analysis does not hold."""


class SpectraMismatch(Refusal):
    """Raised when an intertwiner is requested for non-cospectral graphons.

    ``report`` carries the discrimination bookkeeping explaining the mismatch
    when one could be computed.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class EigensolverError(RuntimeError):
    """The symmetric eigensolver failed to converge."""
