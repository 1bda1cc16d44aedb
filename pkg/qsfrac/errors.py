"""
    Errors
    ~~~~~~
"""


class QsfracError(Exception):
    pass


class DomainError(QsfracError):
    pass


class NonPositiveWeight(DomainError):
    pass


class WeightSumMismatch(DomainError):
    pass


class DigitOutOfRange(DomainError):
    pass


class StreamExhausted(QsfracError):
    pass


class SimplexViolation(DomainError):
    pass


class DegenerateDenominator(DomainError):
    pass


class EmptySubset(DomainError):
    pass


class NonPositiveK(DomainError):
    pass


class DegenerateLeadingCoefficient(DomainError):
    pass


class InvalidInterval(DomainError):
    pass


class InternalDisagreement(QsfracError):
    pass


class InfeasibleConstraint(DomainError):
    pass


class EqualDigits(DomainError):
    pass


class NotLebesgueMode(DomainError):
    pass
