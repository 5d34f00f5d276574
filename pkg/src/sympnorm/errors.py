"""Exception hierarchy shared by every module.

Each exception carries an ``exit_code`` used by the command line front end:
2 for malformed input, 3 for an operation the configured ring or ideal cannot
support, 1 for a mathematical check that failed.
"""


class SympnormError(Exception):
    exit_code = 1


class ParseError(SympnormError):
    exit_code = 2


class UnsupportedRing(SympnormError):
    exit_code = 3


class OwnerMismatch(SympnormError):
    pass


class NotHalvable(SympnormError):
    exit_code = 3


class NotUnit(SympnormError):
    pass


class UndecidableIdeal(SympnormError):
    exit_code = 3


class NotADivisor(SympnormError):
    exit_code = 2


class NotPolynomialRing(SympnormError):
    exit_code = 3


class VariableClash(SympnormError):
    exit_code = 2


class MissingVariable(SympnormError):
    exit_code = 2


class DimMismatch(SympnormError):
    exit_code = 2


class NotSquare(DimMismatch):
    pass


class NotInvertible(SympnormError):
    pass


class NotSkew(SympnormError):
    pass


class OddSize(SympnormError):
    pass


class OutOfRange(SympnormError):
    exit_code = 2


class BadIndices(SympnormError):
    exit_code = 2


class BadCase(SympnormError):
    exit_code = 2


class CongruenceMismatch(SympnormError):
    pass


class NotLocalRing(SympnormError):
    exit_code = 3


class PfaffianNotOne(SympnormError):
    pass


class ContextMismatch(SympnormError):
    exit_code = 2


class LengthMismatch(SympnormError):
    exit_code = 2


class HypothesisNotMet(SympnormError):
    pass


class NotSymplectic(SympnormError):
    pass


class IdealViolation(SympnormError):
    pass
