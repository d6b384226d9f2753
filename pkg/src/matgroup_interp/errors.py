"""Exception hierarchy. Every error the CLI can surface has its own class so the
class name doubles as the machine-readable error code."""


class AlgebraError(Exception):
    """Base class for all errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


class NonUnit(AlgebraError):
    pass


class InfiniteRing(AlgebraError):
    pass


class BadRingSpec(AlgebraError):
    pass


class BadIndex(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    pass


class SpecMismatch(AlgebraError):
    pass


class TooLarge(AlgebraError):
    def __init__(self, message: str, predicted: int | None = None):
        super().__init__(message)
        self.predicted = predicted


class NotField(AlgebraError):
    pass


class DetNotOne(AlgebraError):
    pass


class ScheduleTooShort(AlgebraError):
    pass


class NotUnitriangular(AlgebraError):
    pass


class NotInCarrier(AlgebraError):
    pass


class WitnessCheckFailed(AlgebraError):
    pass


class BadIndices(AlgebraError):
    pass


class CharTwo(AlgebraError):
    pass


class NotNormal(AlgebraError):
    pass


class NotCoboundary(AlgebraError):
    pass


class InvalidCocycle(AlgebraError):
    pass


class BadSplit(AlgebraError):
    pass


class NotTrivialCocycle(AlgebraError):
    pass


class InconsistentContext(AlgebraError):
    pass


class ParseError(AlgebraError):
    pass
