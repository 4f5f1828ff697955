"""Exception hierarchy shared by all pipeline stages."""


class ReconstructionError(Exception):
    """Base class for every failure raised by :mod:`sweeprecon`."""


class DecodeError(ReconstructionError):
    pass


class DimensionMismatch(ReconstructionError):
    pass


class EmptyMask(ReconstructionError):
    """No usable foreground object was found."""


class InvalidAxes(ReconstructionError, ValueError):
    pass


class ProfileTooShort(ReconstructionError):
    """The traced silhouette has fewer than two rows."""


class InvalidParams(ReconstructionError, ValueError):
    pass


class InvalidK(ReconstructionError, ValueError):
    pass


class InvalidRatio(ReconstructionError, ValueError):
    pass


class DegeneratePolygon(ReconstructionError, ValueError):
    pass


class DegenerateRing(ReconstructionError):
    pass


class ZeroAreaAccumulation(ReconstructionError):
    pass


class EmptyProfile(ReconstructionError):
    pass


class ParseError(ReconstructionError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OutOfBounds(ReconstructionError, ValueError):
    pass


class NoOverlap(ReconstructionError):
    pass
