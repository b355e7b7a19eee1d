"""Exception hierarchy.  Every error is a ``ValueError`` subclass."""


class PlaneError(ValueError):
    pass


class DuplicateLabel(PlaneError):
    pass


class LineTooSmall(PlaneError):
    pass


class AxiomBViolation(PlaneError):
    """Two lines share two or more points."""


class UnknownPoint(PlaneError):
    pass


class UnknownLine(PlaneError):
    pass


class UnknownElement(PlaneError):
    pass


class SamePoint(PlaneError):
    pass


class SameLine(PlaneError):
    pass


class NotDistinct(PlaneError):
    pass


class ParseError(PlaneError):
    pass


class NotParallel(PlaneError):
    """The lines handed to a one-point extension are not pairwise parallel."""


class StaleLabel(PlaneError):
    """A label chosen for a new point is already in use."""


class NoEmbedding(PlaneError):
    pass


class Ambiguous(PlaneError):
    pass


class MalformedGadget(PlaneError):
    pass


class LogMismatch(PlaneError):
    pass


class NotApplicable(PlaneError):
    pass


class UnsupportedOrder(PlaneError):
    pass
