"""Clifford-Courant algebroids of twisted transgressive models and their T-duality map.

Operators are exact matrices on the flat basis ``mask * dim(base) + index``.
The derived bracket is ``[[d^H, v], w]`` with ``d^H = d + H``, so two vector
fields X, Y bracket to ``[X, Y] - iota_Y iota_X H``.
"""
from fractions import Fraction
import logging
import sys

from ..common.linear_algebra import ExactMatrix, span_rank
from ..common.monomials import popcount
from ..models.base_algebra import BaseElement
from ..models.clifford import CliffordElement, CliffordSection
from ..models.duality_scenario import DualityScenario
from ..models.exceptions import DecompositionError, InvalidGeneratorError
from ..models.results import AlgebroidDecomposition
from ..models.tc_element import TCElement
from ..models.transgressive_model import TransgressiveModel
from .duality_checker import DualityChecker

_LOGGER = logging.getLogger(__name__)

SUMMAND_TANGENT = "TM"
SUMMAND_ODD_FORMS = "<1> (x) odd"
SUMMAND_DERIVATIVE = "<dpsi> (x) even"
SUMMAND_EXTERIOR = "<psi> (x) even"
SUMMAND_PROJECTION = "<dpsi psi> (x) odd"


def graded_commutator(
    first: ExactMatrix, first_parity: int, second: ExactMatrix, second_parity: int
) -> ExactMatrix:
    """{A, B} = AB - (-1)^(|A||B|) BA."""
    forward = first @ second
    backward = second @ first

    if first_parity % 2 and second_parity % 2:
        return forward + backward

    return forward - backward


class CourantCalculator:
    _model: TransgressiveModel
    _twist: TCElement
    _contractions: dict[str, ExactMatrix]
    _twisted_d: ExactMatrix | None

    def __init__(self, model: TransgressiveModel, twist: TCElement | None = None):
        self._model = model
        self._twist = model.zero() if twist is None else model.check_twist(twist)
        self._contractions = {}
        self._twisted_d = None

    @property
    def model(self) -> TransgressiveModel:
        return self._model

    @property
    def twist(self) -> TCElement:
        return self._twist

    def contraction_operator(self, name: str) -> ExactMatrix:
        if name not in self._contractions:
            model = self._model
            self._contractions[name] = model.operator_matrix(
                lambda element: model.contract(name, element)
            )

        return self._contractions[name]

    def vector_operator(self, vector: dict[str, Fraction]) -> ExactMatrix:
        result = ExactMatrix.zeros((self._model.dimension, self._model.dimension))

        for name, value in vector.items():
            result = result + self.contraction_operator(name).scale(value)

        return result

    def section_operator(self, section: CliffordSection) -> ExactMatrix:
        result = self.vector_operator(section.vector) + section.clifford.to_operator()

        return result

    def clifford_act(self, section: CliffordSection, element: TCElement) -> TCElement:
        result = section.clifford.act(element)

        for name, value in section.vector.items():
            result = result + self._model.contract(name, element).scale(value)

        return result

    def vertical_differential(self) -> CliffordElement:
        """Sum over generators of multiplication by the transgression after the derivative."""
        model = self._model
        result = CliffordElement(model)

        for generator in model.generators:
            multiplication = CliffordElement.left_multiplication(model, generator.transgression)
            derivative = CliffordElement.derivative(model, generator.label)
            result = result + multiplication.compose(derivative)

        return result

    def horizontal_differential(self) -> ExactMatrix:
        model = self._model
        base = model.base
        rows: dict[int, dict[int, Fraction]] = {}

        for mask, index in model.basis():
            sign = -1 if popcount(mask) % 2 else 1
            source = model.flat_index(mask, index)

            for target, value in base.basis_differential(index).items():
                rows.setdefault(model.flat_index(mask, target), {})[source] = sign * value

        matrix = ExactMatrix.from_rows(rows, (model.dimension, model.dimension))

        return matrix

    def build_twisted_d_operator(self) -> ExactMatrix:
        if self._twisted_d is None:
            model = self._model
            twist = self._twist

            vertical = self.vertical_differential().to_operator()
            twist_operator = model.operator_matrix(lambda element: twist.wedge(element))

            self._twisted_d = vertical + self.horizontal_differential() + twist_operator

        return self._twisted_d

    def bracket_operator(self, first: CliffordSection, second: CliffordSection) -> ExactMatrix:
        differential = self.build_twisted_d_operator()

        inner = graded_commutator(differential, 1, self.section_operator(first), 1)
        result = graded_commutator(inner, 0, self.section_operator(second), 1)

        return result

    def derived_bracket(self, first: CliffordSection, second: CliffordSection) -> CliffordSection:
        operator = self.bracket_operator(first, second)

        try:
            result = self.decompose_operator(operator)

        except DecompositionError as ex:
            exc_type, exc_obj, tb = sys.exc_info()
            line_number = tb.tb_lineno

            _LOGGER.error(
                f"Failed to decompose bracket on '{self._model.name}', Error: {ex}, Line: {line_number}"
            )

            raise

        return result

    def _flat_parity(self, flat: int) -> int:
        mask, index = self._model.flat_term(flat)
        parity = (self._model.monomial_degree(mask) + self._model.base.degree(index)) % 2

        return parity

    def decompose_operator(self, operator: ExactMatrix) -> CliffordSection:
        """Splits an odd operator into a vector field part and a Clifford part."""
        model = self._model
        base = model.base

        for (row, column), _ in operator.entries().items():
            if self._flat_parity(row) == self._flat_parity(column):
                raise DecompositionError("Operator is not odd", operator)

        entries: dict[tuple[int, int], BaseElement] = {}

        for mask in range(1 << model.size):
            image = operator.column(model.flat_index(mask, base.unit_index))
            by_row: dict[int, dict[int, Fraction]] = {}

            for flat, value in image.items():
                row, index = model.flat_term(flat)
                by_row.setdefault(row, {})[index] = value

            for row, terms in by_row.items():
                entries[(row, mask)] = BaseElement(base, terms)

        clifford = CliffordElement(model, entries)
        residual = operator - clifford.to_operator()

        if residual.is_zero:
            return CliffordSection(model, {}, clifford)

        names = base.contraction_names
        size = model.dimension * model.dimension

        columns = [self.contraction_operator(name).flatten() for name in names]
        system = ExactMatrix.from_columns(columns, size) if columns else ExactMatrix.zeros((size, 0))
        solution = system.solve(residual.flatten())

        if solution is None:
            raise DecompositionError(
                f"Operator on '{model.name}' is not a section of the algebroid", residual
            )

        vector = {names[position]: value for position, value in solution.items()}
        section = CliffordSection(model, vector, clifford)

        return section

    def sphere_algebroid_decomposition(self) -> AlgebroidDecomposition:
        model = self._model

        if model.size != 1:
            raise InvalidGeneratorError("Decomposition needs a single generator model")

        base = model.base
        label = model.labels[0]

        identity = CliffordElement.identity(model)
        exterior = CliffordElement.exterior(model, label)
        derivative = CliffordElement.derivative(model, label)
        projection = derivative.compose(exterior)

        odd = [index for index in range(base.dimension) if base.degree(index) % 2]
        even = [index for index in range(base.dimension) if base.degree(index) % 2 == 0]

        def operators(word: CliffordElement, indices: list[int]) -> list[dict[int, Fraction]]:
            flattened = []

            for index in indices:
                multiplication = CliffordElement.left_multiplication(model, base.basis_element(index))
                flattened.append(word.compose(multiplication).to_operator().flatten())

            return flattened

        summands = {
            SUMMAND_TANGENT: [self.contraction_operator(name).flatten() for name in base.contraction_names],
            SUMMAND_ODD_FORMS: operators(identity, odd),
            SUMMAND_DERIVATIVE: operators(derivative, even),
            SUMMAND_EXTERIOR: operators(exterior, even),
            SUMMAND_PROJECTION: operators(projection, odd),
        }

        size = model.dimension * model.dimension
        ranks = {name: span_rank(vectors, size) for name, vectors in summands.items()}
        total = span_rank([vector for vectors in summands.values() for vector in vectors], size)

        decomposition = AlgebroidDecomposition(ranks, total)

        return decomposition


class SectionTransformer:
    """Conjugation of sections by the transform of a scenario."""

    _scenario: DualityScenario
    _checker: DualityChecker
    _source: CourantCalculator
    _target: CourantCalculator

    def __init__(self, scenario: DualityScenario, checker: DualityChecker | None = None):
        self._scenario = scenario
        self._checker = checker or DualityChecker(scenario)
        self._source = CourantCalculator(scenario.e, scenario.h)
        self._target = CourantCalculator(scenario.e_hat, scenario.h_hat)

    @property
    def source(self) -> CourantCalculator:
        return self._source

    @property
    def target(self) -> CourantCalculator:
        return self._target

    def conjugate(self, operator: ExactMatrix) -> ExactMatrix:
        transform = self._checker.tau_matrix()
        inverse = self._checker.tau_inverse()

        result = transform @ operator @ inverse

        return result

    def tduality_section_map(self, section: CliffordSection) -> CliffordSection:
        operator = self.conjugate(self._source.section_operator(section))
        remainder = operator - self._target.vector_operator(section.vector)

        decomposed = self._target.decompose_operator(remainder)

        vector = dict(section.vector)

        for name, value in decomposed.vector.items():
            vector[name] = vector.get(name, Fraction(0)) + value

        result = CliffordSection(self._scenario.e_hat, vector, decomposed.clifford)

        return result

    def preserves_bracket(self, first: CliffordSection, second: CliffordSection) -> bool:
        left = self.conjugate(self._source.bracket_operator(first, second))
        right = self._target.bracket_operator(
            self.tduality_section_map(first), self.tduality_section_map(second)
        )

        return left == right
