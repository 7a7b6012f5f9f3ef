"""Exception hierarchy for diamond7."""

__all__ = ["Diamond7Error", "NonUnitConstantTerm", "RationalCoefficients",
           "NegativeValuation", "IntegralityViolation", "CrossCheckMismatch",
           "InsufficientTruncation", "DomainError", "NonIntegralEvaluation",
           "NoRepresentation", "UnderdeterminedInput", "IdentityFailure", "NonIntegralH",
           "DataShapeFailure", "CongruenceFailure", "UnexpectedDeviant", "MissingDeviant",
           "NotInIdeal", "NoCertificate", "ChecksumMismatch"]


class Diamond7Error(Exception):
    """Base class for every error raised by the package."""


class NonUnitConstantTerm(Diamond7Error):
    pass


class RationalCoefficients(Diamond7Error):
    pass


class NegativeValuation(Diamond7Error):
    pass


class IntegralityViolation(Diamond7Error):
    pass


class CrossCheckMismatch(Diamond7Error):
    pass


class InsufficientTruncation(Diamond7Error):
    pass


class DomainError(Diamond7Error, ValueError):
    pass


class NonIntegralEvaluation(Diamond7Error):
    pass


class NoRepresentation(Diamond7Error):
    pass


class UnderdeterminedInput(Diamond7Error):
    pass


class IdentityFailure(Diamond7Error):
    def __init__(self, message, exponent=None):
        super().__init__(message)
        self.exponent = exponent


class NonIntegralH(Diamond7Error):
    pass


class DataShapeFailure(Diamond7Error):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CongruenceFailure(Diamond7Error):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnexpectedDeviant(Diamond7Error):
    pass


class MissingDeviant(Diamond7Error):
    pass


class NotInIdeal(Diamond7Error):
    pass


class NoCertificate(Diamond7Error):
    pass


class ChecksumMismatch(Diamond7Error):
    pass
