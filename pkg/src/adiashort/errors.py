"""Exception types.

Validation problems derive from ``ValueError``; numerical failures of the
comb solver derive from ``NumericalError`` so the CLI can map them to
distinct exit codes.
"""


class AdiaShortError(Exception):
    pass


class ValidationError(AdiaShortError, ValueError):
    pass


class NumericalError(AdiaShortError, ArithmeticError):
    pass


class InvalidSpectrum(ValidationError):
    pass


class DegenerateSpectrum(ValidationError):
    pass


class KinkAtZero(ValidationError):
    """Derivative of an exponential mode requested at t = 0."""


class TruncationOverflow(ValidationError):
    pass


class NotExpandable(ValidationError):
    pass


class UnsupportedSpectrum(ValidationError):
    pass


class NonpositiveTau(ValidationError):
    pass


class InvalidProtocol(ValidationError):
    pass


class GridTooCoarse(ValidationError):
    pass


class UnresolvedComb(ValidationError):
    pass


class SingularSystem(NumericalError):
    pass


class IllConditioned(NumericalError):
    pass
