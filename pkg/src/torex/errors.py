"""Exception hierarchy shared by every torex module."""


class TorexError(Exception):
    """Base class for all library errors."""


class InvalidFan(TorexError):
    pass


class NotSimplicial(TorexError):
    pass


class OriginNotInterior(TorexError):
    pass


class NotFano(TorexError):
    pass


class NotRankTwo(TorexError):
    pass


class ZeroAlphaEntry(TorexError):
    pass


class NoInteriorRelation(TorexError):
    pass


class RankTooLow(TorexError):
    pass


class UnboundedPolyhedron(TorexError):
    pass


class DegenerateZonotope(TorexError):
    pass


class TooManyRays(TorexError):
    pass


class NonProperConfiguration(TorexError):
    pass


class NotDimTwo(TorexError):
    pass


class PhiNotConvex(TorexError):
    pass


class CertificateFailure(TorexError):
    def __init__(self, message, face=None):
        super().__init__(message)
        self.face = face


class KindMismatch(TorexError):
    pass


class GenericityFailure(TorexError):
    pass


class NonGenericShift(TorexError):
    pass


class UnsupportedShape(TorexError):
    pass


class NonIntegralCount(TorexError):
    pass


class HomCycle(TorexError):
    pass


class UnsupportedDimension(TorexError):
    pass


class InputError(TorexError):
    """Malformed user input (bad JSON, unknown fields, wrong shapes)."""
