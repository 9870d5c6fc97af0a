"""Exception hierarchy shared by every module of the package."""


class NgonError(Exception):
    """Base class for all errors raised by :mod:`ngon`."""


class InvalidLetterError(NgonError, ValueError):
    pass


class PreconditionError(NgonError, ValueError):
    pass


class GeometryError(NgonError, ValueError):
    """A point that should lie on a circle does not (within tolerance)."""


class DegeneracyError(NgonError, ValueError):
    """Coincident robots or a zero-radius circle."""


class NotApplicableError(NgonError):
    """The operation does not apply to this configuration (e.g. election on an n-gon)."""


class ElectionError(NgonError):
    """Internal consistency failure during leader election.

    Cannot happen on valid input; signals corrupted geometry or letters that
    are clustered closer than the angular tolerance.
    """


class UnsupportedNError(NgonError, ValueError):
    pass


class PhaseError(NgonError):
    pass


class ProtocolError(NgonError):
    pass


class ModelViolationError(NgonError):
    pass


class FairnessViolationError(ModelViolationError):
    pass


class GenerationError(NgonError):
    pass
