from enum import IntEnum, StrEnum


class FiberSide(StrEnum):
    E = "E"
    EHAT = "Ehat"

    @staticmethod
    def get_list() -> list[str]:
        return list(FiberSide)

    def other(self) -> "FiberSide":
        other = FiberSide.EHAT if self == FiberSide.E else FiberSide.E

        return other


class Command(StrEnum):
    VALIDATE = "validate"
    CHECK = "check"
    TRANSFORM = "transform"
    COHOMOLOGY = "cohomology"
    BRACKET = "bracket"
    CONSTRUCT = "construct"
    REPORT = "report"

    @staticmethod
    def get_list() -> list[str]:
        return list(Command)


class Recipe(StrEnum):
    SPHERE = "sphere"
    FRAME_I = "frame-i"
    FRAME_II = "frame-ii"
    RELATION = "relation"
    MULTIDEGREE = "multidegree"

    @staticmethod
    def get_list() -> list[str]:
        return list(Recipe)


class ExitCode(IntEnum):
    SUCCESS = 0
    NOT_DUAL = 1
    INVALID_SCENARIO = 2
    BUILDER_FAILED = 3


class CohomologyGrading(StrEnum):
    DEGREE = "degree"
    PARITY = "parity"


class Parity(StrEnum):
    EVEN = "even"
    ODD = "odd"

    @staticmethod
    def of(degree: int) -> "Parity":
        parity = Parity.ODD if degree % 2 else Parity.EVEN

        return parity


class ViolationKind(StrEnum):
    DEGREE = "degree"
    UNIT = "unit"
    COMMUTATIVITY = "commutativity"
    ASSOCIATIVITY = "associativity"
    LEIBNIZ = "leibniz"
    D_SQUARED = "d_squared"
    CONNECTIVITY = "connectivity"
    CONTRACTION_DEGREE = "contraction_degree"
    CONTRACTION_DERIVATION = "contraction_derivation"
    CONTRACTION_SQUARE = "contraction_square"
    CONTRACTION_ANTICOMMUTATION = "contraction_anticommutation"
    LIE_DERIVATION = "lie_derivation"
    GENERATOR_DEGREE = "generator_degree"
    TRANSGRESSION = "transgression"
