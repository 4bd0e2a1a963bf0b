"""Finite-dimensional graded commutative DGAs and their elements."""
from collections.abc import Iterable, Mapping
from fractions import Fraction
import logging

from ..common.consts import UNIT_LABEL
from ..common.linear_algebra import (
    ExactMatrix,
    SparseVector,
    add_vectors,
    clean_vector,
    extend_basis,
)
from .exceptions import AlgebraMismatchError, InvalidAlgebraError, InvalidElementError

_LOGGER = logging.getLogger(__name__)

LabelledTerms = Mapping[str, Fraction | int]


def format_coefficient(value: Fraction, label: str, is_first: bool) -> str:
    sign = "-" if value < 0 else "+"
    magnitude = abs(value)

    body = label if magnitude == 1 else f"{magnitude} * {label}"

    if is_first:
        text = f"-{body}" if sign == "-" else body

    else:
        text = f" {sign} {body}"

    return text


class FiniteCDGA:
    """Graded commutative DGA with a finite homogeneous basis.

    Products declared for one ordered pair only are completed by graded
    commutativity. Products with the unit are implicit unless declared.
    """

    _name: str
    _labels: tuple[str, ...]
    _degrees: tuple[int, ...]
    _index: dict[str, int]
    _unit: int
    _products: dict[tuple[int, int], SparseVector]
    _differential: dict[int, SparseVector]
    _contractions: dict[str, dict[int, SparseVector]]

    def __init__(
        self,
        name: str,
        basis: Iterable[tuple[str, int]],
        unit: str = UNIT_LABEL,
        products: Mapping[tuple[str, str], LabelledTerms] | None = None,
        differential: Mapping[str, LabelledTerms] | None = None,
        contractions: Mapping[str, Mapping[str, LabelledTerms]] | None = None,
    ):
        basis = list(basis)

        self._name = name
        self._labels = tuple(label for label, _ in basis)
        self._degrees = tuple(int(degree) for _, degree in basis)
        self._index = {label: index for index, label in enumerate(self._labels)}

        if len(self._index) != len(self._labels):
            raise InvalidAlgebraError(f"Duplicate basis labels in '{name}'")

        if any(degree < 0 for degree in self._degrees):
            raise InvalidAlgebraError(f"Negative degree in the basis of '{name}'")

        if unit not in self._index:
            raise InvalidAlgebraError(f"Unit '{unit}' is not a basis label of '{name}'")

        self._unit = self._index[unit]

        self._products = self._load_products(products or {})

        self._differential = {
            self._lookup(label): self._to_vector(terms)
            for label, terms in (differential or {}).items()
        }

        self._differential = {
            index: vector for index, vector in self._differential.items() if vector
        }

        self._contractions = {}

        for contraction, mapping in (contractions or {}).items():
            table = {
                self._lookup(label): self._to_vector(terms)
                for label, terms in mapping.items()
            }

            self._contractions[contraction] = {
                index: vector for index, vector in table.items() if vector
            }

        _LOGGER.debug(
            f"Loaded algebra '{name}' with {len(self._labels)} basis elements, "
            f"{len(self._contractions)} contractions"
        )

    def _lookup(self, label: str) -> int:
        if label not in self._index:
            raise InvalidAlgebraError(
                f"Unknown basis label '{label}' in algebra '{self._name}'"
            )

        return self._index[label]

    def _to_vector(self, terms: LabelledTerms) -> SparseVector:
        vector: SparseVector = {}

        for label, value in terms.items():
            add_vectors(vector, {self._lookup(label): Fraction(value)})

        return vector

    def _load_products(
        self, products: Mapping[tuple[str, str], LabelledTerms]
    ) -> dict[tuple[int, int], SparseVector]:
        declared = {
            (self._lookup(left), self._lookup(right)): self._to_vector(terms)
            for (left, right), terms in products.items()
        }

        table = dict(declared)

        for (left, right), vector in declared.items():
            if (right, left) in declared:
                continue

            sign = -1 if self._degrees[left] * self._degrees[right] % 2 else 1
            table[(right, left)] = {index: sign * value for index, value in vector.items()}

        for index in range(len(self._labels)):
            table.setdefault((self._unit, index), {index: Fraction(1)})
            table.setdefault((index, self._unit), {index: Fraction(1)})

        table = {pair: vector for pair, vector in table.items() if vector}

        return table

    @property
    def name(self) -> str:
        return self._name

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    @property
    def dimension(self) -> int:
        return len(self._labels)

    @property
    def unit_index(self) -> int:
        return self._unit

    @property
    def unit_label(self) -> str:
        return self._labels[self._unit]

    @property
    def max_degree(self) -> int:
        max_degree = max(self._degrees, default=0)

        return max_degree

    @property
    def contraction_names(self) -> list[str]:
        names = list(self._contractions)

        return names

    @property
    def key(self) -> tuple:
        key = (
            self._name,
            self._labels,
            self._degrees,
            self._unit,
            tuple(sorted((pair, tuple(sorted(v.items()))) for pair, v in self._products.items())),
            tuple(sorted((i, tuple(sorted(v.items()))) for i, v in self._differential.items())),
            tuple(
                sorted(
                    (
                        name,
                        tuple(sorted((i, tuple(sorted(v.items()))) for i, v in table.items())),
                    )
                    for name, table in self._contractions.items()
                )
            ),
        )

        return key

    def __eq__(self, other) -> bool:
        if self is other:
            return True

        if not isinstance(other, FiniteCDGA):
            return NotImplemented

        return self.key == other.key

    def __hash__(self):
        return hash((self._name, self._labels, self._degrees))

    def __repr__(self):
        return f"FiniteCDGA(name={self._name}, basis={list(zip(self._labels, self._degrees))})"

    def index_of(self, label: str) -> int:
        return self._lookup(label)

    def label(self, index: int) -> str:
        return self._labels[index]

    def degree(self, index: int) -> int:
        return self._degrees[index]

    def indices_of_degree(self, degree: int) -> list[int]:
        indices = [index for index, value in enumerate(self._degrees) if value == degree]

        return indices

    def has_contraction(self, name: str) -> bool:
        return name in self._contractions

    def element(self, terms: Mapping[str, Fraction | int] | None = None) -> "BaseElement":
        element = BaseElement(self, self._to_vector(terms or {}))

        return element

    def zero(self) -> "BaseElement":
        return BaseElement(self, {})

    def one(self) -> "BaseElement":
        return BaseElement(self, {self._unit: Fraction(1)})

    def basis_element(self, index: int) -> "BaseElement":
        return BaseElement(self, {index: Fraction(1)})

    def basis_product(self, left: int, right: int) -> SparseVector:
        product = self._products.get((left, right), {})

        return product

    def basis_differential(self, index: int) -> SparseVector:
        differential = self._differential.get(index, {})

        return differential

    def basis_contraction(self, name: str, index: int) -> SparseVector:
        if name not in self._contractions:
            raise InvalidElementError(
                f"Algebra '{self._name}' has no contraction named '{name}'"
            )

        contraction = self._contractions[name].get(index, {})

        return contraction

    def multiply_vectors(self, left: Mapping[int, Fraction], right: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}

        for left_index, left_value in left.items():
            for right_index, right_value in right.items():
                product = self._products.get((left_index, right_index))

                if product:
                    add_vectors(result, product, left_value * right_value)

        return result

    def differentiate_vector(self, vector: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}

        for index, value in vector.items():
            add_vectors(result, self._differential.get(index, {}), value)

        return result

    def contract_vector(self, name: str, vector: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}

        for index, value in vector.items():
            add_vectors(result, self.basis_contraction(name, index), value)

        return result

    def mul(self, left: "BaseElement", right: "BaseElement") -> "BaseElement":
        self._check_owner("multiply", left, right)

        product = BaseElement(self, self.multiply_vectors(left.terms, right.terms))

        return product

    def d(self, element: "BaseElement") -> "BaseElement":
        self._check_owner("differentiate", element)

        result = BaseElement(self, self.differentiate_vector(element.terms))

        return result

    def contract(self, name: str, element: "BaseElement") -> "BaseElement":
        self._check_owner("contract", element)

        result = BaseElement(self, self.contract_vector(name, element.terms))

        return result

    def lie_derivative(self, name: str, element: "BaseElement") -> "BaseElement":
        first = self.d(self.contract(name, element))
        second = self.contract(name, self.d(element))

        result = first + second

        return result

    def _check_owner(self, operation: str, *elements: "BaseElement"):
        for element in elements:
            if element.algebra != self:
                raise AlgebraMismatchError(operation, self._name, element.algebra.name)

    def differential_matrix(self, degree: int) -> tuple[ExactMatrix, list[int], list[int]]:
        """Matrix of d from the given degree to the next, with both index lists."""
        source = self.indices_of_degree(degree)
        target = self.indices_of_degree(degree + 1)
        position = {index: row for row, index in enumerate(target)}

        columns = []

        for index in source:
            image = self._differential.get(index, {})
            columns.append({position[i]: value for i, value in image.items() if i in position})

        matrix = ExactMatrix.from_columns(columns, len(target))

        return matrix, source, target

    def cocycle_basis(self, degree: int) -> list["BaseElement"]:
        matrix, source, _ = self.differential_matrix(degree)

        basis = [
            BaseElement(self, {source[i]: value for i, value in vector.items()})
            for vector in matrix.nullspace()
        ]

        return basis

    def coboundary_basis(self, degree: int) -> list["BaseElement"]:
        matrix, _, target = self.differential_matrix(degree - 1)

        rows, _ = matrix.transpose().rref()

        basis = [
            BaseElement(self, {target[i]: value for i, value in row.items()})
            for row in rows.values()
        ]

        return basis

    def cohomology_basis(self, degree: int) -> list["BaseElement"]:
        """Cocycles completing the coboundaries to a basis of the cocycles."""
        boundaries = [element.terms for element in self.coboundary_basis(degree)]
        cycles = [element.terms for element in self.cocycle_basis(degree)]

        chosen = extend_basis(boundaries, cycles, self.dimension)
        representatives = [BaseElement(self, vector) for vector in chosen]

        return representatives

    def solve_primitive(self, element: "BaseElement") -> "BaseElement | None":
        """Some g with dg equal to the element, or None when it is not exact."""
        self._check_owner("solve for a primitive of", element)

        if element.is_zero:
            return self.zero()

        columns = [self._differential.get(index, {}) for index in range(self.dimension)]
        matrix = ExactMatrix.from_columns(columns, self.dimension)

        solution = matrix.solve(element.terms)
        result = None if solution is None else BaseElement(self, solution)

        return result

    def is_exact(self, element: "BaseElement") -> bool:
        return self.solve_primitive(element) is not None


class BaseElement:
    _algebra: FiniteCDGA
    _terms: SparseVector

    def __init__(self, algebra: FiniteCDGA, terms: Mapping[int, Fraction | int]):
        self._algebra = algebra
        self._terms = clean_vector(terms)

    @property
    def algebra(self) -> FiniteCDGA:
        return self._algebra

    @property
    def terms(self) -> SparseVector:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degrees(self) -> set[int]:
        degrees = {self._algebra.degree(index) for index in self._terms}

        return degrees

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        degrees = self.degrees
        degree = next(iter(degrees)) if len(degrees) == 1 else None

        return degree

    @property
    def is_closed(self) -> bool:
        return self._algebra.d(self).is_zero

    def coefficient(self, label_or_index: str | int) -> Fraction:
        index = (
            self._algebra.index_of(label_or_index)
            if isinstance(label_or_index, str)
            else label_or_index
        )

        value = self._terms.get(index, Fraction(0))

        return value

    def component(self, degree: int) -> "BaseElement":
        terms = {
            index: value
            for index, value in self._terms.items()
            if self._algebra.degree(index) == degree
        }

        return BaseElement(self._algebra, terms)

    def d(self) -> "BaseElement":
        return self._algebra.d(self)

    def _combine(self, other: "BaseElement", scale: int) -> "BaseElement":
        if not isinstance(other, BaseElement):
            return NotImplemented

        if other.algebra != self._algebra:
            raise AlgebraMismatchError("add", self._algebra.name, other.algebra.name)

        terms = dict(self._terms)
        add_vectors(terms, other.terms, Fraction(scale))

        return BaseElement(self._algebra, terms)

    def __add__(self, other: "BaseElement") -> "BaseElement":
        return self._combine(other, 1)

    def __sub__(self, other: "BaseElement") -> "BaseElement":
        return self._combine(other, -1)

    def __neg__(self) -> "BaseElement":
        return self.scale(-1)

    def scale(self, factor: Fraction | int) -> "BaseElement":
        factor = Fraction(factor)
        terms = {index: factor * value for index, value in self._terms.items()}

        return BaseElement(self._algebra, terms)

    def __mul__(self, other):
        if isinstance(other, BaseElement):
            return self._algebra.mul(self, other)

        if isinstance(other, (int, Fraction)):
            return self.scale(other)

        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)

        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, BaseElement):
            return NotImplemented

        is_equal = self._algebra == other.algebra and self._terms == other.terms

        return is_equal

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items())))

    def render(self) -> str:
        if not self._terms:
            return "0"

        parts = [
            format_coefficient(value, self._algebra.label(index), position == 0)
            for position, (index, value) in enumerate(sorted(self._terms.items()))
        ]

        text = "".join(parts)

        return text

    def __repr__(self):
        return f"BaseElement({self._algebra.name}: {self.render()})"

    def to_dict(self) -> dict[str, str]:
        data = {
            self._algebra.label(index): str(value)
            for index, value in sorted(self._terms.items())
        }

        return data
