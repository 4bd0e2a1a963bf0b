"""Constructions of T-dual partners for sphere, frame and partial frame bundle models."""
from collections.abc import Sequence
from fractions import Fraction
import logging

from ..common.consts import DEFAULT_E_PREFIX, DEFAULT_EHAT_PREFIX, DEFAULT_SPHERE_DUAL_LABEL
from ..common.linear_algebra import ExactMatrix
from ..models.base_algebra import BaseElement, FiniteCDGA
from ..models.duality_scenario import DualityScenario
from ..models.exceptions import BuilderPreconditionError, KernelConstancyError, NoDualError
from ..models.tc_element import TCElement
from ..models.transgressive_model import OddGenerator, TransgressiveModel
from .duality_checker import DualityChecker

_LOGGER = logging.getLogger(__name__)


def _require_class(element: BaseElement, degree: int, name: str):
    if not element.is_zero and element.degree != degree:
        raise BuilderPreconditionError(f"{name} must be homogeneous of degree {degree}")

    if not element.is_closed:
        raise BuilderPreconditionError(f"{name} is not closed")


def _require_lambdas(lambdas: Sequence[Fraction | int], count: int) -> list[Fraction]:
    values = [Fraction(value) for value in lambdas]

    if len(values) != count:
        raise BuilderPreconditionError(f"Expected {count} lambda values, got {len(values)}")

    if any(value == 0 for value in values):
        raise BuilderPreconditionError("Lambda values must be non-zero")

    return values


def _require_full_frame(model: TransgressiveModel) -> list[BaseElement]:
    degrees = [generator.degree for generator in model.generators]
    expected = [2 * position + 1 for position in range(model.size)]

    if degrees != expected:
        raise BuilderPreconditionError(
            f"'{model.name}' is not a full frame model, generator degrees are {degrees}"
        )

    chern = [generator.transgression for generator in model.generators]

    return chern


def _linear_coefficients(h: TCElement) -> tuple[BaseElement, list[BaseElement]]:
    """Splits H into its basic part and the coefficients of single generators."""
    model = h.model

    for mask in h.masks:
        if bin(mask).count("1") > 1:
            raise BuilderPreconditionError(
                f"H must be linear in the generators, found '{model.monomial_label(mask)}'"
            )

    coefficients = [h.coefficient(1 << position) for position in range(model.size)]

    return h.coefficient(0), coefficients


class DualityBuilder:
    _verify: bool

    def __init__(self, verify: bool = True):
        self._verify = verify

    def _finish(
        self,
        h: TCElement,
        h_hat: TCElement,
        kernel: TCElement,
        name: str,
        description: str,
    ) -> DualityScenario:
        scenario = DualityScenario(h, h_hat, kernel, name, description)

        if self._verify:
            checker = DualityChecker(scenario)
            gerbe = checker.check_gerbe_trivialization()

            if not gerbe.holds:
                raise BuilderPreconditionError(
                    f"Constructed kernel does not trivialize the gerbe: {gerbe.residual.render()}"
                )

            try:
                nondegeneracy = checker.check_nondegeneracy()

            except KernelConstancyError as ex:
                raise BuilderPreconditionError(f"Constructed kernel is not constant: {ex}") from ex

            if not nondegeneracy.is_nondegenerate:
                raise BuilderPreconditionError(
                    f"Constructed kernel is degenerate, {nondegeneracy.reason}"
                )

        _LOGGER.info(f"Constructed scenario '{name}': {description}")

        return scenario

    def construct_sphere_dual(
        self,
        h: TCElement,
        euler_hat: BaseElement,
        dual_degree: int | None = None,
        dual_label: str = DEFAULT_SPHERE_DUAL_LABEL,
        name: str = "sphere-dual",
    ) -> DualityScenario:
        e_model = h.model
        base = e_model.base

        if e_model.size != 1:
            raise BuilderPreconditionError("Sphere construction needs a single generator model")

        if not h.is_odd or not h.is_closed:
            raise BuilderPreconditionError("H must be odd and closed")

        if not euler_hat.is_closed:
            raise BuilderPreconditionError("Dual Euler class is not closed")

        if euler_hat.is_zero:
            if dual_degree is None:
                raise BuilderPreconditionError("A zero dual Euler class needs an explicit dual degree")

            degree = dual_degree

        else:
            if euler_hat.degree is None or euler_hat.degree % 2 or euler_hat.degree < 2:
                raise BuilderPreconditionError("Dual Euler class must be of a single even degree")

            degree = euler_hat.degree - 1

            if dual_degree is not None and dual_degree != degree:
                raise BuilderPreconditionError(
                    f"Dual degree {dual_degree} does not match the dual Euler class"
                )

        euler = e_model.generators[0].transgression
        h_zero = h.coefficient(0)
        h_one = h.coefficient(1)

        h_one_prime, g = self._solve_sphere_equation(base, euler_hat, h_one)

        e_hat_model = TransgressiveModel(
            base, [OddGenerator(dual_label, degree, euler_hat)], f"{base.name}:{dual_label}"
        )
        correspondence = TransgressiveModel.make_correspondence(e_model, e_hat_model)

        h_hat = e_hat_model.lift(h_zero + euler * g) + e_hat_model.monomial(
            [dual_label], euler * h_one_prime
        )

        psi = e_model.labels[0]
        kernel = -correspondence.monomial([psi, dual_label], h_one_prime) - correspondence.monomial(
            [psi], g
        )

        scenario = self._finish(
            h, h_hat, kernel, name, f"sphere bundle dual with fiber degree {degree}"
        )

        return scenario

    @staticmethod
    def _solve_sphere_equation(
        base: FiniteCDGA, euler_hat: BaseElement, target: BaseElement
    ) -> tuple[BaseElement, BaseElement]:
        """Closed even B and odd g with euler_hat * B + dg = target and B invertible."""
        even = [index for index in range(base.dimension) if base.degree(index) % 2 == 0]
        odd = [index for index in range(base.dimension) if base.degree(index) % 2]
        dimension = base.dimension

        columns = []

        for index in even:
            column = dict(base.multiply_vectors(euler_hat.terms, {index: Fraction(1)}))

            for target_index, value in base.basis_differential(index).items():
                column[dimension + target_index] = value

            columns.append(column)

        for index in odd:
            columns.append(dict(base.basis_differential(index)))

        matrix = ExactMatrix.from_columns(columns, 2 * dimension)
        solution = matrix.solve(target.terms)

        if solution is None:
            raise NoDualError("H restricted to the fiber is not divisible by the dual Euler class")

        unit_column = even.index(base.unit_index)

        if not solution.get(unit_column):
            for vector in matrix.nullspace():
                if vector.get(unit_column):
                    for index, value in vector.items():
                        solution[index] = solution.get(index, Fraction(0)) + value

                    break

            else:
                raise NoDualError("No solution with an invertible degree 0 part")

        b_terms = {even[column]: value for column, value in solution.items() if column < len(even)}
        g_terms = {
            odd[column - len(even)]: value
            for column, value in solution.items()
            if column >= len(even)
        }

        return BaseElement(base, b_terms), BaseElement(base, g_terms)

    def construct_frame_dual_one(
        self,
        h: TCElement,
        lambdas: Sequence[Fraction | int],
        name: str = "frame-dual-i",
    ) -> DualityScenario:
        """Dual of a full frame bundle with a one-legged H of degree 2n + 1."""
        e_model = h.model
        base = e_model.base
        chern = _require_full_frame(e_model)
        rank = len(chern)
        values = _require_lambdas(lambdas, rank)

        if not h.is_closed:
            raise BuilderPreconditionError("H is not closed")

        h_basic, coefficients = _linear_coefficients(h)

        for position, coefficient in enumerate(coefficients):
            index = position + 1
            _require_class(coefficient, 2 * (rank - index + 1), f"Coefficient of {e_model.labels[position]}")

        generators = []

        for index in range(1, rank + 1):
            epsilon = coefficients[rank - index]
            generators.append(
                OddGenerator(
                    f"{DEFAULT_EHAT_PREFIX}{2 * index - 1}",
                    2 * index - 1,
                    epsilon.scale(values[index - 1]),
                )
            )

        e_hat_model = TransgressiveModel(base, generators, f"{base.name}:dual-frame")
        correspondence = TransgressiveModel.make_correspondence(e_model, e_hat_model)

        h_hat = e_hat_model.lift(h_basic)
        kernel = correspondence.zero()

        for index in range(1, rank + 1):
            factor = 1 / values[index - 1]
            dual_label = e_hat_model.labels[index - 1]

            h_hat = h_hat + e_hat_model.monomial([dual_label], chern[rank - index].scale(factor))
            kernel = kernel - correspondence.monomial(
                [e_model.labels[rank - index], dual_label]
            ).scale(factor)

        scenario = self._finish(h, h_hat, kernel, name, f"frame bundle dual of rank {rank}")

        return scenario

    def construct_frame_dual_two(
        self,
        h: TCElement,
        extra_chern: Sequence[BaseElement],
        shift: int,
        lambdas: Sequence[Fraction | int],
        name: str = "frame-dual-ii",
    ) -> DualityScenario:
        """Dual partial frame bundle of n vectors in a bundle of rank n + shift."""
        e_model = h.model
        base = e_model.base
        chern = _require_full_frame(e_model)
        rank = len(chern)
        values = _require_lambdas(lambdas, rank)

        if shift < 0:
            raise BuilderPreconditionError(f"Rank shift must be non-negative, got {shift}")

        if len(extra_chern) != shift:
            raise BuilderPreconditionError(f"Expected {shift} extra Chern classes, got {len(extra_chern)}")

        for index, extra in enumerate(extra_chern, start=1):
            _require_class(extra, 2 * index, f"Extra Chern class {index}")

        if not h.is_closed:
            raise BuilderPreconditionError("H is not closed")

        h_basic, coefficients = _linear_coefficients(h)
        generators = []

        for offset in range(rank):
            position = rank - offset - 1
            epsilon = coefficients[position]
            _require_class(epsilon, 2 * (shift + offset + 1), f"Coefficient of {e_model.labels[position]}")

            degree = 2 * (shift + offset) + 1
            generators.append(
                OddGenerator(f"{DEFAULT_EHAT_PREFIX}{degree}", degree, epsilon.scale(values[offset]))
            )

        e_hat_model = TransgressiveModel(base, generators, f"{base.name}:dual-partial-frame")
        correspondence = TransgressiveModel.make_correspondence(e_model, e_hat_model)

        h_hat = e_hat_model.lift(h_basic)
        kernel = correspondence.zero()

        for offset in range(rank):
            factor = 1 / values[offset]
            position = rank - offset - 1
            dual_label = e_hat_model.labels[offset]

            h_hat = h_hat + e_hat_model.monomial([dual_label], chern[position].scale(factor))
            kernel = kernel - correspondence.monomial(
                [e_model.labels[position], dual_label]
            ).scale(factor)

        scenario = self._finish(
            h, h_hat, kernel, name, f"partial frame dual of {rank} vectors in rank {rank + shift}"
        )

        return scenario

    def construct_relation_dual(
        self,
        chern: Sequence[BaseElement],
        chern_hat: Sequence[BaseElement],
        start: int,
        lambdas: Sequence[Fraction | int],
        h: BaseElement,
        name: str = "relation-dual",
    ) -> DualityScenario:
        """Partial frame duals from sum lambda_(k+i) c_(n-i) chat_(k+i) + dh = 0."""
        rank = len(chern)
        rank_hat = len(chern_hat)

        if not 1 <= start <= rank_hat:
            raise BuilderPreconditionError(f"Start index must lie in 1..{rank_hat}, got {start}")

        if start <= rank_hat - rank:
            raise BuilderPreconditionError(
                f"Start index must exceed {rank_hat - rank}, got {start}"
            )

        count = rank_hat - start + 1
        values = _require_lambdas(lambdas, count)

        if not chern:
            raise BuilderPreconditionError("Relation needs at least one Chern class")

        base = chern[0].algebra

        for index, element in enumerate(chern, start=1):
            _require_class(element, 2 * index, f"Chern class c{index}")

        for index, element in enumerate(chern_hat, start=1):
            _require_class(element, 2 * index, f"Chern class chat{index}")

        degree = 2 * rank + 2 * start - 1

        if not h.is_zero and h.degree != degree:
            raise BuilderPreconditionError(f"h must be of degree {degree}")

        relation = h.d()

        for offset in range(count):
            relation = relation + (chern[rank - offset - 1] * chern_hat[start + offset - 1]).scale(values[offset])

        if not relation.is_zero:
            raise BuilderPreconditionError(f"Relation does not hold, residual {relation.render()}")

        e_model = TransgressiveModel.partial_frame(base, chern, count, DEFAULT_E_PREFIX, f"{base.name}:E")
        e_hat_model = TransgressiveModel.partial_frame(
            base, chern_hat, count, DEFAULT_EHAT_PREFIX, f"{base.name}:Ehat"
        )
        correspondence = TransgressiveModel.make_correspondence(e_model, e_hat_model)

        h_form = e_model.lift(h)
        h_hat = e_hat_model.lift(h)
        kernel = correspondence.zero()

        for offset in range(count):
            value = values[offset]
            label = f"{DEFAULT_E_PREFIX}{2 * (rank - offset) - 1}"
            dual_label = f"{DEFAULT_EHAT_PREFIX}{2 * (start + offset) - 1}"

            h_form = h_form + e_model.monomial([label], chern_hat[start + offset - 1]).scale(value)
            h_hat = h_hat + e_hat_model.monomial([dual_label], chern[rank - offset - 1]).scale(value)
            kernel = kernel - correspondence.monomial([label, dual_label]).scale(value)

        scenario = self._finish(
            h_form, h_hat, kernel, name, f"partial frame duals of {count} vectors"
        )

        return scenario

    def construct_multidegree_dual(
        self,
        chern: Sequence[BaseElement],
        chern_hat: Sequence[BaseElement],
        count: int,
        h_list: Sequence[BaseElement],
        name: str = "multidegree-dual",
    ) -> DualityScenario:
        """Partial frame duals with H spread over several degrees."""
        rank = len(chern)

        if len(chern_hat) != rank:
            raise BuilderPreconditionError("Both bundles must have the same rank")

        if not 1 <= count <= rank:
            raise BuilderPreconditionError(f"Number of vectors must lie in 1..{rank}, got {count}")

        if len(h_list) != count:
            raise BuilderPreconditionError(f"Expected {count} forms h, got {len(h_list)}")

        base = chern[0].algebra

        for index in range(1, rank + 1):
            _require_class(chern[index - 1], 2 * index, f"Chern class c{index}")
            _require_class(chern_hat[index - 1], 2 * index, f"Chern class chat{index}")

        indices = list(range(rank - count + 1, rank + 1))

        for index, h in zip(indices, h_list):
            if not h.is_zero and h.degree != 4 * index - 1:
                raise BuilderPreconditionError(f"h{index} must be of degree {4 * index - 1}")

            relation = chern[index - 1] * chern_hat[index - 1] + h.d()

            if not relation.is_zero:
                raise BuilderPreconditionError(
                    f"Relation {index} does not hold, residual {relation.render()}"
                )

        e_model = TransgressiveModel.partial_frame(base, chern, count, DEFAULT_E_PREFIX, f"{base.name}:E")
        e_hat_model = TransgressiveModel.partial_frame(
            base, chern_hat, count, DEFAULT_EHAT_PREFIX, f"{base.name}:Ehat"
        )
        correspondence = TransgressiveModel.make_correspondence(e_model, e_hat_model)

        h_form = e_model.zero()
        h_hat = e_hat_model.zero()
        kernel = correspondence.zero()

        for index, h in zip(indices, h_list):
            label = f"{DEFAULT_E_PREFIX}{2 * index - 1}"
            dual_label = f"{DEFAULT_EHAT_PREFIX}{2 * index - 1}"

            h_form = h_form + e_model.monomial([label], chern_hat[index - 1]) + e_model.lift(h)
            h_hat = h_hat + e_hat_model.monomial([dual_label], chern[index - 1]) + e_hat_model.lift(h)
            kernel = kernel - correspondence.monomial([label, dual_label])

        scenario = self._finish(
            h_form, h_hat, kernel, name, f"multidegree partial frame duals of {count} vectors"
        )

        return scenario
