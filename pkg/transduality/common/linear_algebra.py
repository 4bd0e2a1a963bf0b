"""Exact sparse matrices over the rationals.

Entries live in a sympy ``SDM`` over ``QQ``; everything crossing the public
surface is a ``fractions.Fraction``. Vectors are sparse ``{index: Fraction}``
dictionaries without zero entries.
"""
from collections.abc import Iterable, Mapping
from fractions import Fraction
import logging

from sympy import QQ
from sympy.polys.matrices.sdm import SDM

from ..models.exceptions import SingularMatrixError

_LOGGER = logging.getLogger(__name__)

SparseVector = dict[int, Fraction]


def to_domain(value: Fraction | int):
    value = Fraction(value)
    result = QQ(value.numerator, value.denominator)

    return result


def from_domain(value) -> Fraction:
    result = Fraction(int(value.numerator), int(value.denominator))

    return result


def clean_vector(vector: Mapping[int, Fraction | int]) -> SparseVector:
    result = {index: Fraction(value) for index, value in vector.items() if value}

    return result


def add_vectors(
    target: SparseVector, vector: Mapping[int, Fraction], scale: Fraction = Fraction(1)
):
    for index, value in vector.items():
        updated = target.get(index, Fraction(0)) + scale * value

        if updated:
            target[index] = updated

        else:
            target.pop(index, None)


class ExactMatrix:
    _sdm: SDM

    def __init__(self, sdm: SDM):
        self._sdm = sdm

    @staticmethod
    def from_rows(rows: Mapping[int, Mapping[int, Fraction | int]], shape: tuple[int, int]):
        data = {}

        for row_index, row in rows.items():
            converted = {
                column: to_domain(value) for column, value in row.items() if value
            }

            if converted:
                data[row_index] = converted

        matrix = ExactMatrix(SDM(data, shape, QQ))

        return matrix

    @staticmethod
    def from_columns(columns: Iterable[Mapping[int, Fraction | int]], row_count: int):
        rows: dict[int, dict[int, Fraction]] = {}
        column_count = 0

        for column_index, column in enumerate(columns):
            column_count = column_index + 1

            for row_index, value in column.items():
                if value:
                    rows.setdefault(row_index, {})[column_index] = value

        matrix = ExactMatrix.from_rows(rows, (row_count, column_count))

        return matrix

    @staticmethod
    def from_lists(values: list[list[Fraction | int]]):
        row_count = len(values)
        column_count = len(values[0]) if values else 0

        rows = {
            row_index: dict(enumerate(row)) for row_index, row in enumerate(values)
        }

        matrix = ExactMatrix.from_rows(rows, (row_count, column_count))

        return matrix

    @staticmethod
    def zeros(shape: tuple[int, int]):
        matrix = ExactMatrix(SDM({}, shape, QQ))

        return matrix

    @staticmethod
    def identity(size: int):
        matrix = ExactMatrix(SDM.eye((size, size), QQ))

        return matrix

    @property
    def shape(self) -> tuple[int, int]:
        shape = self._sdm.shape

        return shape

    @property
    def row_count(self) -> int:
        return self._sdm.shape[0]

    @property
    def column_count(self) -> int:
        return self._sdm.shape[1]

    @property
    def sdm(self) -> SDM:
        return self._sdm

    @property
    def is_zero(self) -> bool:
        is_zero = all(not value for row in self._sdm.values() for value in row.values())

        return is_zero

    def entry(self, row: int, column: int) -> Fraction:
        value = self._sdm.get(row, {}).get(column)
        result = Fraction(0) if value is None else from_domain(value)

        return result

    def row(self, index: int) -> SparseVector:
        row = {
            column: from_domain(value)
            for column, value in self._sdm.get(index, {}).items()
            if value
        }

        return row

    def column(self, index: int) -> SparseVector:
        column = {}

        for row_index, row in self._sdm.items():
            value = row.get(index)

            if value:
                column[row_index] = from_domain(value)

        return column

    def entries(self) -> dict[tuple[int, int], Fraction]:
        result = {
            (row_index, column): from_domain(value)
            for row_index, row in self._sdm.items()
            for column, value in row.items()
            if value
        }

        return result

    def to_lists(self) -> list[list[Fraction]]:
        rows, columns = self.shape
        result = [[self.entry(i, j) for j in range(columns)] for i in range(rows)]

        return result

    def apply(self, vector: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}

        for row_index, row in self._sdm.items():
            total = Fraction(0)

            for column, value in row.items():
                component = vector.get(column)

                if component:
                    total += from_domain(value) * component

            if total:
                result[row_index] = total

        return result

    def transpose(self):
        return ExactMatrix(self._sdm.transpose())

    def scale(self, factor: Fraction | int):
        if not factor:
            return ExactMatrix.zeros(self.shape)

        return ExactMatrix(self._sdm.mul(to_domain(factor)))

    def __matmul__(self, other: "ExactMatrix"):
        if self.column_count != other.row_count:
            raise ValueError(
                f"Cannot compose {self.shape} with {other.shape} matrices"
            )

        return ExactMatrix(self._sdm.matmul(other.sdm))

    def __add__(self, other: "ExactMatrix"):
        return ExactMatrix(self._sdm.add(other.sdm))

    def __sub__(self, other: "ExactMatrix"):
        return ExactMatrix(self._sdm.sub(other.sdm))

    def __neg__(self):
        return ExactMatrix(self._sdm.neg())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented

        is_equal = self.shape == other.shape and (self - other).is_zero

        return is_equal

    def __repr__(self):
        return f"ExactMatrix(shape={self.shape}, entries={self.entries()})"

    def rref(self) -> tuple[dict[int, SparseVector], list[int]]:
        """Reduced rows keyed by their pivot column, plus the pivot columns."""
        reduced, pivots = self._sdm.rref()

        rows = {}

        for row in reduced.values():
            converted = {
                column: from_domain(value) for column, value in row.items() if value
            }

            if converted:
                rows[min(converted)] = converted

        return rows, list(pivots)

    def rank(self) -> int:
        _, pivots = self._sdm.rref()

        return len(pivots)

    def nullspace(self) -> list[SparseVector]:
        rows, pivots = self.rref()
        pivot_set = set(pivots)

        basis = []

        for free in range(self.column_count):
            if free in pivot_set:
                continue

            vector = {free: Fraction(1)}

            for pivot, row in rows.items():
                value = row.get(free)

                if value:
                    vector[pivot] = -value

            basis.append(vector)

        return basis

    def solve(self, rhs: Mapping[int, Fraction]) -> SparseVector | None:
        """Particular solution with all free variables set to zero."""
        augmented_column = self.column_count
        rows = {index: dict(self._sdm.get(index, {})) for index in self._sdm}

        for index, value in rhs.items():
            if value:
                rows.setdefault(index, {})[augmented_column] = to_domain(value)

        rows = {index: row for index, row in rows.items() if row}

        augmented = ExactMatrix(
            SDM(rows, (self.row_count, self.column_count + 1), QQ)
        )

        reduced, pivots = augmented.rref()

        if augmented_column in pivots:
            return None

        solution = {}

        for pivot, row in reduced.items():
            value = row.get(augmented_column)

            if value:
                solution[pivot] = value

        return solution

    def inverse(self):
        rows, columns = self.shape

        if rows != columns:
            raise SingularMatrixError(f"Cannot invert a non-square {self.shape} matrix")

        data = {index: dict(row) for index, row in self._sdm.items()}

        for index in range(rows):
            data.setdefault(index, {})[columns + index] = QQ.one

        augmented = ExactMatrix(SDM(data, (rows, 2 * columns), QQ))
        reduced, pivots = augmented.rref()

        if pivots[:rows] != list(range(rows)):
            raise SingularMatrixError(
                f"Matrix of shape {self.shape} has rank {len([p for p in pivots if p < columns])}"
            )

        inverse_rows = {
            pivot: {
                column - columns: value
                for column, value in row.items()
                if column >= columns
            }
            for pivot, row in reduced.items()
        }

        result = ExactMatrix.from_rows(inverse_rows, (rows, columns))

        return result

    def determinant(self) -> Fraction:
        rows, columns = self.shape

        if rows != columns:
            raise ValueError(f"Determinant of a non-square {self.shape} matrix")

        if rows == 0:
            return Fraction(1)

        result = from_domain(self._sdm.det())

        return result

    def flatten(self) -> SparseVector:
        columns = self.column_count

        flat = {
            row_index * columns + column: value
            for (row_index, column), value in self.entries().items()
        }

        return flat


def span_rank(vectors: list[Mapping[int, Fraction]], dimension: int) -> int:
    if not vectors:
        return 0

    matrix = ExactMatrix.from_columns(vectors, dimension)
    rank = matrix.rank()

    return rank


def extend_basis(
    spanning: list[SparseVector], candidates: list[SparseVector], dimension: int
) -> list[SparseVector]:
    """Candidates that are independent modulo the span of ``spanning``."""
    chosen = []
    current = list(spanning)
    current_rank = span_rank(current, dimension)

    for candidate in candidates:
        trial = current + [candidate]
        trial_rank = span_rank(trial, dimension)

        if trial_rank > current_rank:
            chosen.append(candidate)
            current = trial
            current_rank = trial_rank

    return chosen


def in_span(vectors: list[SparseVector], target: SparseVector, dimension: int) -> bool:
    if not target:
        return True

    if not vectors:
        return False

    matrix = ExactMatrix.from_columns(vectors, dimension)
    result = matrix.solve(target) is not None

    return result
