"""Exception hierarchy shared by all modules."""


class ToricFaceError(Exception):
    """Base class for every error raised by :mod:`toricface`."""


class NotPointed(ToricFaceError):
    pass


class NotAFan(ToricFaceError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ConeNotInFan(ToricFaceError):
    pass


class ZeroCone(ToricFaceError):
    pass


class ProjectionDegenerate(ToricFaceError):
    pass


class NotASubfan(ToricFaceError):
    pass


class MixedComplex(ToricFaceError):
    pass


class NotInterior(ToricFaceError):
    pass


class AxiomViolation(ToricFaceError):
    pass


class NotAComplex(ToricFaceError):
    pass


class NotCohenMacaulay(ToricFaceError):
    pass


class NotNormal(ToricFaceError):
    """Operation only defined for the normal complex C ∩ Z^d."""


class NoSigma(ToricFaceError):
    pass


class NotInIdealSupport(ToricFaceError):
    pass


class NotMaximalPermutation(ToricFaceError):
    pass


class RearrangementFailed(ToricFaceError):
    pass


class SearchBudgetExceeded(ToricFaceError):
    pass


class ParseError(ToricFaceError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


class ValidationError(ToricFaceError):
    pass
