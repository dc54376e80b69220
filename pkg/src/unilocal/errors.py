"""Domain errors.

Every failure mode that a caller can trigger with legal-but-rejected input is a
named subclass of DomainError; the CLI maps these to exit code 2 and reports
``error_kind`` = the class name.  Genuine usage mistakes (malformed JSON,
unknown commands) are UsageError/SchemaError and exit with code 1.
"""


class DomainError(Exception):
    @property
    def kind(self) -> str:
        return type(self).__name__


class InvalidSpec(DomainError):
    pass


class RingMismatch(DomainError):
    pass


class NotAUnit(DomainError):
    pass


class TooLarge(DomainError):
    pass


class ImproperIdeal(DomainError):
    pass


class NotStarInvariant(DomainError):
    pass


class UnsupportedQuotient(DomainError):
    pass


class DimMismatch(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class BadParameter(DomainError):
    pass


class NotInGroup(DomainError):
    pass


class HypothesisViolated(DomainError):
    pass


class NoSolution(DomainError):
    pass


class SearchSpaceTooLarge(DomainError):
    pass


class DivisionByZero(DomainError):
    pass


class NotPrimitive(DomainError):
    pass


class NoUniqueMinimalIdeal(DomainError):
    pass


class NotSymplecticPair(DomainError):
    pass


class NotSymplecticSet(DomainError):
    pass


class BadVector(DomainError):
    pass


class NotInSL2R(DomainError):
    pass


class NotInSU(DomainError):
    pass


class NotSymplectic(DomainError):
    pass


class NotInU(DomainError):
    pass


class NotBasisVector(DomainError):
    pass


class NonzeroLength(DomainError):
    pass


class NotNormOne(DomainError):
    pass


class RamifiedObstruction(DomainError):
    pass


class UnknownSuite(DomainError):
    pass


class UsageError(Exception):
    pass


class SchemaError(UsageError):
    pass
