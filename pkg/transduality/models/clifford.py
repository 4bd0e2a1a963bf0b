"""Clifford-valued operators and sections of the Clifford-Courant algebroid.

A ``CliffordElement`` is a matrix indexed by generator monomials whose entries
are base elements; it acts on the right module by
``psi_J ^ a -> sum_I psi_I ^ entry(I, J) * a``.
"""
from collections.abc import Mapping
from fractions import Fraction

from ..common.linear_algebra import ExactMatrix
from ..common.monomials import iter_masks, popcount, position_sign
from .base_algebra import BaseElement, format_coefficient
from .exceptions import AlgebraMismatchError, InvalidElementError
from .tc_element import TCElement, TermMap, add_terms
from .transgressive_model import TransgressiveModel

Entry = tuple[int, int]


class CliffordElement:
    _model: TransgressiveModel
    _entries: dict[Entry, BaseElement]

    def __init__(self, model: TransgressiveModel, entries: Mapping[Entry, BaseElement] | None = None):
        self._model = model
        self._entries = {}

        for (row, column), value in (entries or {}).items():
            if value.algebra != model.base:
                raise AlgebraMismatchError("build an operator from", value.algebra.name, model.base.name)

            if not value.is_zero:
                self._entries[(row, column)] = value

    @staticmethod
    def identity(model: TransgressiveModel) -> "CliffordElement":
        entries = {(mask, mask): model.base.one() for mask in iter_masks(model.size)}

        return CliffordElement(model, entries)

    @staticmethod
    def exterior(model: TransgressiveModel, label: str) -> "CliffordElement":
        position = model.index_of(label)
        bit = 1 << position
        unit = model.base.one()

        entries = {
            (mask | bit, mask): unit.scale(position_sign(mask, position))
            for mask in iter_masks(model.size)
            if not mask & bit
        }

        return CliffordElement(model, entries)

    @staticmethod
    def derivative(model: TransgressiveModel, label: str) -> "CliffordElement":
        position = model.index_of(label)
        bit = 1 << position
        unit = model.base.one()

        entries = {
            (mask & ~bit, mask): unit.scale(position_sign(mask, position))
            for mask in iter_masks(model.size)
            if mask & bit
        }

        return CliffordElement(model, entries)

    @staticmethod
    def left_multiplication(model: TransgressiveModel, element: BaseElement) -> "CliffordElement":
        """beta ^ (psi_K ^ a) = (-1)^(|beta||K|) psi_K ^ beta * a."""
        odd_part = BaseElement(
            element.algebra,
            {
                index: value
                for index, value in element.terms.items()
                if element.algebra.degree(index) % 2
            },
        )
        even_part = element - odd_part

        entries = {}

        for mask in iter_masks(model.size):
            entry = even_part - odd_part if popcount(mask) % 2 else element
            entries[(mask, mask)] = entry

        return CliffordElement(model, entries)

    @staticmethod
    def matrix_unit(model: TransgressiveModel, row: int, column: int, element: BaseElement | None = None) -> "CliffordElement":
        element = element or model.base.one()

        return CliffordElement(model, {(row, column): element})

    @property
    def model(self) -> TransgressiveModel:
        return self._model

    @property
    def entries(self) -> dict[Entry, BaseElement]:
        return dict(self._entries)

    @property
    def is_zero(self) -> bool:
        return not self._entries

    @property
    def parities(self) -> set[int]:
        parities = set()

        for (row, column), value in self._entries.items():
            for degree in value.degrees:
                parities.add((popcount(row) + popcount(column) + degree) % 2)

        return parities

    @property
    def is_odd(self) -> bool:
        return self.parities <= {1}

    @property
    def is_even(self) -> bool:
        return self.parities <= {0}

    def _check_model(self, operation: str, other: "CliffordElement"):
        if other.model != self._model:
            raise AlgebraMismatchError(operation, self._model.name, other.model.name)

    def _combine(self, other: "CliffordElement", scale: int) -> "CliffordElement":
        if not isinstance(other, CliffordElement):
            return NotImplemented

        self._check_model("add", other)

        entries = dict(self._entries)

        for key, value in other.entries.items():
            current = entries.get(key, self._model.base.zero())
            entries[key] = current + value.scale(scale)

        return CliffordElement(self._model, entries)

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        return self._combine(other, 1)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self._combine(other, -1)

    def __neg__(self) -> "CliffordElement":
        return self.scale(-1)

    def scale(self, factor: Fraction | int) -> "CliffordElement":
        entries = {key: value.scale(factor) for key, value in self._entries.items()}

        return CliffordElement(self._model, entries)

    def compose(self, other: "CliffordElement") -> "CliffordElement":
        self._check_model("compose", other)

        base = self._model.base
        entries: dict[Entry, BaseElement] = {}

        for (row, middle), left in self._entries.items():
            for (other_middle, column), right in other.entries.items():
                if middle != other_middle:
                    continue

                current = entries.get((row, column), base.zero())
                entries[(row, column)] = current + base.mul(left, right)

        return CliffordElement(self._model, entries)

    def __matmul__(self, other: "CliffordElement") -> "CliffordElement":
        return self.compose(other)

    def act(self, element: TCElement) -> TCElement:
        if element.model != self._model:
            raise AlgebraMismatchError("act on", element.model.name, self._model.name)

        base = self._model.base
        by_column: dict[int, list[tuple[int, BaseElement]]] = {}

        for (row, column), value in self._entries.items():
            by_column.setdefault(column, []).append((row, value))

        result: TermMap = {}

        for (mask, index), coefficient in element.terms.items():
            for row, value in by_column.get(mask, []):
                product = base.multiply_vectors(value.terms, {index: Fraction(1)})

                for target, amount in product.items():
                    add_terms(result, {(row, target): amount}, coefficient)

        return TCElement(self._model, result)

    def to_operator(self) -> ExactMatrix:
        model = self._model
        base = model.base
        rows: dict[int, dict[int, Fraction]] = {}

        for (row, column), value in self._entries.items():
            for index in range(base.dimension):
                product = base.multiply_vectors(value.terms, {index: Fraction(1)})
                source = model.flat_index(column, index)

                for target, amount in product.items():
                    flat = model.flat_index(row, target)
                    rows.setdefault(flat, {})
                    rows[flat][source] = rows[flat].get(source, Fraction(0)) + amount

        matrix = ExactMatrix.from_rows(rows, (model.dimension, model.dimension))

        return matrix

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordElement):
            return NotImplemented

        is_equal = self._model == other.model and self._entries == other.entries

        return is_equal

    def _monomial_text(self, mask: int) -> str:
        text = self._model.monomial_label(mask) or "1"

        return text

    def render(self) -> str:
        if not self._entries:
            return "0"

        base = self._model.base
        parts = []

        for (row, column), value in sorted(self._entries.items()):
            unit = f"[{self._monomial_text(row)}|{self._monomial_text(column)}]"

            for index, coefficient in sorted(value.terms.items()):
                label = f"{unit} (x) {base.label(index)}"
                parts.append(format_coefficient(coefficient, label, not parts))

        text = "".join(parts)

        return text

    def __repr__(self):
        return f"CliffordElement({self.render()})"


class CliffordSection:
    """Section X + C: a vector field from the base contractions plus an odd Clifford part."""

    _vector: dict[str, Fraction]
    _clifford: CliffordElement

    def __init__(
        self,
        model: TransgressiveModel,
        vector: Mapping[str, Fraction | int] | None = None,
        clifford: CliffordElement | None = None,
    ):
        self._vector = {name: Fraction(value) for name, value in (vector or {}).items() if value}
        self._clifford = clifford if clifford is not None else CliffordElement(model)

        if self._clifford.model != model:
            raise AlgebraMismatchError("build a section from", self._clifford.model.name, model.name)

        for name in self._vector:
            if not model.base.has_contraction(name):
                raise InvalidElementError(
                    f"'{model.base.name}' has no contraction named '{name}'"
                )

        if not self._clifford.is_odd:
            raise InvalidElementError("Clifford part of a section must be odd")

    @property
    def model(self) -> TransgressiveModel:
        return self._clifford.model

    @property
    def vector(self) -> dict[str, Fraction]:
        return dict(self._vector)

    @property
    def clifford(self) -> CliffordElement:
        return self._clifford

    @property
    def is_zero(self) -> bool:
        return not self._vector and self._clifford.is_zero

    def _combine(self, other: "CliffordSection", scale: int) -> "CliffordSection":
        if not isinstance(other, CliffordSection):
            return NotImplemented

        vector = dict(self._vector)

        for name, value in other.vector.items():
            vector[name] = vector.get(name, Fraction(0)) + scale * value

        clifford = self._clifford + other.clifford.scale(scale)

        return CliffordSection(self.model, vector, clifford)

    def __add__(self, other: "CliffordSection") -> "CliffordSection":
        return self._combine(other, 1)

    def __sub__(self, other: "CliffordSection") -> "CliffordSection":
        return self._combine(other, -1)

    def scale(self, factor: Fraction | int) -> "CliffordSection":
        vector = {name: factor * value for name, value in self._vector.items()}

        return CliffordSection(self.model, vector, self._clifford.scale(factor))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordSection):
            return NotImplemented

        is_equal = self._vector == other.vector and self._clifford == other.clifford

        return is_equal

    def render(self) -> str:
        vector_parts = [
            format_coefficient(value, name, position == 0)
            for position, (name, value) in enumerate(sorted(self._vector.items()))
        ]

        vector = "".join(vector_parts) or "0"
        text = f"X: {vector} ; C: {self._clifford.render()}"

        return text

    def __repr__(self):
        return f"CliffordSection({self.render()})"
