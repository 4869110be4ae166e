"""Exception hierarchy.

Every error raised by the library derives from :class:`QIGError`, which is a
``ValueError`` so callers that only care about bad input can catch that.
"""


class QIGError(ValueError):
    """Base class for all library errors."""


class NotHermitian(QIGError):
    pass


class SingularPower(QIGError):
    pass


class SingularLog(QIGError):
    pass


class NotAState(QIGError):
    """A matrix failed one of the density-matrix invariants."""

    def __init__(self, message, invariant=None):
        super().__init__(message)
        self.invariant = invariant


class SupportMismatch(QIGError):
    pass


class BadParameter(QIGError):
    pass


class NumericalSpectrum(QIGError):
    pass


class OutOfDomain(QIGError):
    pass


class DomainMargin(QIGError):
    pass


class SingularMetric(QIGError):
    pass


class DegenerateFrame(QIGError):
    pass


class BadMetric(QIGError):
    pass


class SingularQuorum(QIGError):
    """The tomographic linear system is not invertible for this frame set."""

    def __init__(self, message, rank=None, condition=None):
        super().__init__(message)
        self.rank = rank
        self.condition = condition


class DegenerateQuadrature(QIGError):
    pass
