from ..common.enums import ExitCode


class TransdualityError(Exception):
    exit_code: ExitCode = ExitCode.INVALID_SCENARIO


class AlgebraMismatchError(TransdualityError):
    def __init__(self, operation: str, left: str, right: str):
        super().__init__(
            f"Cannot {operation} elements of '{left}' and '{right}'"
        )

        self.operation = operation
        self.left = left
        self.right = right


class InvalidAlgebraError(TransdualityError):
    pass


class InvalidElementError(TransdualityError):
    pass


class InvalidGeneratorError(TransdualityError):
    pass


class SingularMatrixError(TransdualityError):
    pass


class KernelConstancyError(TransdualityError):
    exit_code = ExitCode.NOT_DUAL


class ShortcutNotApplicableError(TransdualityError):
    pass


class DecompositionError(TransdualityError):
    residual: object | None

    def __init__(self, message: str, residual: object | None = None):
        super().__init__(message)

        self.residual = residual


class BuilderPreconditionError(TransdualityError):
    exit_code = ExitCode.BUILDER_FAILED


class NoDualError(BuilderPreconditionError):
    pass


class ScenarioSyntaxError(TransdualityError):
    line: int
    column: int

    def __init__(self, message: str, line: int, column: int, source: str | None = None):
        location = f"{source}:" if source else ""

        super().__init__(f"{location}{line}:{column}: {message}")

        self.line = line
        self.column = column
        self.source = source


class ScenarioSemanticError(TransdualityError):
    pass
