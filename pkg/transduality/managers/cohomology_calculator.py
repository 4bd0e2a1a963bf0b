"""Cohomology of transgressive models, plain and twisted, by exact rank computations."""
from fractions import Fraction
import logging

from ..common.enums import CohomologyGrading, Parity
from ..common.linear_algebra import ExactMatrix, SparseVector, extend_basis, in_span, span_rank
from ..models.base_algebra import BaseElement, FiniteCDGA
from ..models.cohomology_table import CohomologyTable, GradingKey
from ..models.duality_scenario import DualityScenario
from ..models.exceptions import SingularMatrixError
from ..models.results import DualComparison
from ..models.tc_element import TCElement
from ..models.transgressive_model import TransgressiveModel
from .duality_checker import DualityChecker

_LOGGER = logging.getLogger(__name__)


class ComplexData:
    """Basis blocks of a finite complex together with the images of the differential."""

    blocks: dict[GradingKey, list[int]]
    images: dict[int, SparseVector]
    is_twisted: bool

    def __init__(
        self,
        blocks: dict[GradingKey, list[int]],
        images: dict[int, SparseVector],
        is_twisted: bool,
    ):
        self.blocks = blocks
        self.images = images
        self.is_twisted = is_twisted

    def predecessor(self, key: GradingKey) -> GradingKey:
        if not self.is_twisted:
            return key - 1

        previous = Parity.ODD if key == Parity.EVEN else Parity.EVEN

        return previous

    def cycles(self, key: GradingKey) -> list[SparseVector]:
        indices = self.blocks.get(key, [])

        if not indices:
            return []

        targets = sorted({row for index in indices for row in self.images.get(index, {})})
        position = {row: local for local, row in enumerate(targets)}

        columns = [
            {position[row]: value for row, value in self.images.get(index, {}).items()}
            for index in indices
        ]

        matrix = ExactMatrix.from_columns(columns, len(targets))

        cycles = [
            {indices[local]: value for local, value in vector.items()}
            for vector in matrix.nullspace()
        ]

        return cycles

    def boundaries(self, key: GradingKey) -> list[SparseVector]:
        source = self.blocks.get(self.predecessor(key), [])
        boundaries = [self.images[index] for index in source if self.images.get(index)]

        return boundaries


class CohomologyCalculator:
    def _complex(self, model: TransgressiveModel, twist: TCElement | None) -> ComplexData:
        blocks: dict[GradingKey, list[int]] = {}
        images = {}

        for flat, (mask, index) in enumerate(model.basis()):
            degree = model.monomial_degree(mask) + model.base.degree(index)
            key = degree if twist is None else Parity.of(degree)
            blocks.setdefault(key, []).append(flat)

            element = model.element({(mask, index): Fraction(1)})
            image = (
                model.differential(element)
                if twist is None
                else model.twisted_differential(twist, element)
            )

            images[flat] = image.vector()

        return ComplexData(blocks, images, twist is not None)

    def _compute(self, model: TransgressiveModel, twist: TCElement | None, subject: str) -> CohomologyTable:
        data = self._complex(model, twist)

        dimensions = {}
        representatives = {}

        keys = list(data.blocks)

        if twist is not None:
            keys = [Parity.EVEN, Parity.ODD]

        for key in keys:
            cycles = data.cycles(key)
            boundaries = data.boundaries(key)

            chosen = extend_basis(boundaries, cycles, model.dimension)

            dimensions[key] = len(chosen)
            representatives[key] = [model.element_from_vector(vector) for vector in chosen]

        grading = CohomologyGrading.DEGREE if twist is None else CohomologyGrading.PARITY
        table = CohomologyTable(subject, grading, dimensions, representatives)

        _LOGGER.debug(f"Cohomology of {subject}: {table.dimensions}")

        return table

    def cohomology_dims(self, model: TransgressiveModel) -> CohomologyTable:
        return self._compute(model, None, f"H({model.name})")

    def twisted_cohomology_dims(self, model: TransgressiveModel, twist: TCElement) -> CohomologyTable:
        twist = model.check_twist(twist)

        table = self._compute(model, twist, f"H({model.name}, {twist.render()})")

        return table

    def base_cohomology(self, algebra: FiniteCDGA) -> CohomologyTable:
        model = TransgressiveModel(algebra, [], algebra.name)
        table = self.cohomology_dims(model)

        return table

    def pullback_kernel(self, model: TransgressiveModel) -> dict[int, list[BaseElement]]:
        """Base classes whose pullback to the model is exact, by degree."""
        base = model.base
        data = self._complex(model, None)
        result = {}

        for degree in range(base.max_degree + 1):
            classes = base.cohomology_basis(degree)

            if not classes:
                continue

            lifted = [model.lift(element).vector() for element in classes]
            boundaries = data.boundaries(degree)

            columns = lifted + boundaries
            matrix = ExactMatrix.from_columns(columns, model.dimension)

            coefficient_vectors = []

            for vector in matrix.nullspace():
                part = {index: value for index, value in vector.items() if index < len(classes)}

                if part:
                    coefficient_vectors.append(part)

            if not coefficient_vectors:
                continue

            rows, _ = ExactMatrix.from_columns(coefficient_vectors, len(classes)).transpose().rref()

            kernel = []

            for row in rows.values():
                element = base.zero()

                for index, value in row.items():
                    element = element + classes[index].scale(value)

                kernel.append(element)

            result[degree] = kernel

        return result

    def principal_ideal_dimensions(self, model: TransgressiveModel) -> dict[int, int]:
        """Dimensions of the ideal generated by the transgression classes in base cohomology."""
        base = model.base
        products: dict[int, list[SparseVector]] = {}

        for generator in model.generators:
            for degree in range(base.max_degree + 1):
                for element in base.cohomology_basis(degree):
                    product = generator.transgression * element

                    if not product.is_zero:
                        products.setdefault(product.degree, []).append(product.terms)

        dimensions = {}

        for degree, vectors in products.items():
            boundaries = [element.terms for element in base.coboundary_basis(degree)]
            rank = span_rank(boundaries + vectors, base.dimension) - span_rank(boundaries, base.dimension)

            if rank:
                dimensions[degree] = rank

        return dimensions

    def compare_duals(self, scenario: DualityScenario, checker: DualityChecker | None = None) -> DualComparison:
        checker = checker or DualityChecker(scenario)

        table = self.twisted_cohomology_dims(scenario.e, scenario.h)
        dual_table = self.twisted_cohomology_dims(scenario.e_hat, scenario.h_hat)

        dimensions = {str(key): value for key, value in table.dimensions.items()}
        dual_dimensions = {str(key): value for key, value in dual_table.dimensions.items()}

        comparison = DualComparison(dimensions, dual_dimensions)

        try:
            checker.tau_inverse()

        except SingularMatrixError as ex:
            _LOGGER.warning(f"Transform of '{scenario.name}' is not invertible, Error: {ex}")

            return comparison

        data = self._complex(scenario.e_hat, scenario.h_hat)
        images_closed = True
        images_span = True

        for key, elements in table.representatives.items():
            images = [checker.tau_transform(element) for element in elements]

            for image in images:
                if not scenario.e_hat.twisted_differential(scenario.h_hat, image).is_zero:
                    images_closed = False

            boundaries = data.boundaries(key)
            dimension = scenario.e_hat.dimension
            vectors = [image.vector() for image in images]

            rank = span_rank(boundaries + vectors, dimension) - span_rank(boundaries, dimension)

            if rank != dual_table.dimension(key):
                images_span = False

        comparison.images_closed = images_closed
        comparison.images_span = images_span

        return comparison

    def is_exact(self, model: TransgressiveModel, element: TCElement, twist: TCElement | None = None) -> bool:
        data = self._complex(model, twist)
        images = [vector for vector in data.images.values() if vector]

        result = in_span(images, element.vector(), model.dimension)

        return result
