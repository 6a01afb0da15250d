"""Exception hierarchy. Every domain failure derives from :class:`ArError`."""


class ArError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class CharacteristicMismatch(ArError):
    pass


class DimensionMismatch(ArError):
    pass


class ValidationError(ArError):
    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class NotAssociative(ValidationError):
    pass


class NoUnit(ValidationError):
    pass


class RadicalNotIdeal(ValidationError):
    pass


class RadicalNotNilpotent(ValidationError):
    pass


class NotSplitBasic(ValidationError):
    pass


class AlgebraMismatch(ArError):
    pass


class NotSelfInjective(ArError):
    pass


class NotSymmetric(ArError):
    pass


class SimpleProjective(ArError):
    pass


class ZeroModule(ArError):
    pass


class SplitnessViolation(ArError):
    pass


class Inconclusive(ArError):
    pass


class NotIndecomposable(ArError):
    pass


class ProjectiveInput(ArError):
    pass


class NoSocleElement(ArError):
    pass


class WalkDiverged(ArError):
    pass


class NotOnRim(ArError):
    pass


class RadicalTooShort(ArError):
    pass


class FormatError(ArError):
    """Malformed input file."""
