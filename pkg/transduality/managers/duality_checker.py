"""T-duality checks for a scenario: gerbe trivialization, nondegeneracy and the transform."""
from fractions import Fraction
import logging
import sys
from threading import Lock

from ..common.enums import FiberSide
from ..common.linear_algebra import ExactMatrix
from ..common.monomials import iter_masks, members
from ..models.base_algebra import BaseElement
from ..models.duality_scenario import DualityScenario
from ..models.exceptions import (
    InvalidGeneratorError,
    KernelConstancyError,
    ShortcutNotApplicableError,
    SingularMatrixError,
)
from ..models.results import (
    ChainMapResult,
    DegreeCheckResult,
    DualityVerdict,
    GerbeCheckResult,
    KernelParts,
    NondegeneracyResult,
)
from ..models.tc_element import TCElement

_LOGGER = logging.getLogger(__name__)


class DualityChecker:
    """Checks and transforms for one scenario; the transform matrices are cached."""

    _scenario: DualityScenario
    _lock: Lock
    _exponential: TCElement | None
    _transform_matrix: ExactMatrix | None
    _inverse_matrix: ExactMatrix | None
    _kernel_parts: KernelParts | None

    def __init__(self, scenario: DualityScenario):
        self._scenario = scenario
        self._lock = Lock()

        self._exponential = None
        self._transform_matrix = None
        self._inverse_matrix = None
        self._kernel_parts = None

    @property
    def scenario(self) -> DualityScenario:
        return self._scenario

    def check_gerbe_trivialization(self) -> GerbeCheckResult:
        scenario = self._scenario
        correspondence = scenario.correspondence

        pulled_h = correspondence.pullback(scenario.h, FiberSide.E)
        pulled_h_hat = correspondence.pullback(scenario.h_hat, FiberSide.EHAT)

        residual = scenario.kernel.d() - (pulled_h - pulled_h_hat)
        result = GerbeCheckResult(residual)

        _LOGGER.debug(f"Gerbe check of '{scenario.name}': {result}")

        return result

    def extract_kernel_parts(self) -> KernelParts:
        with self._lock:
            if self._kernel_parts is None:
                self._kernel_parts = self._extract_kernel_parts()

            return self._kernel_parts

    def _extract_kernel_parts(self) -> KernelParts:
        scenario = self._scenario
        correspondence = scenario.correspondence
        base = correspondence.base
        size = scenario.e.size
        e_mask = (1 << size) - 1

        degree_zero = scenario.kernel.basic_component(0)

        e_terms = {}
        e_hat_terms = {}
        mixed: dict[tuple[int, int], Fraction] = {}

        for (mask, index), value in degree_zero.terms.items():
            left = mask & e_mask
            right = mask >> size

            if index != base.unit_index:
                raise KernelConstancyError(
                    f"Degree 0 coefficient '{base.label(index)}' of the kernel is not a unit multiple"
                )

            if not right:
                e_terms[(left, index)] = value

            elif not left:
                e_hat_terms[(right, index)] = value

            else:
                mixed[(left, right)] = value

        self._check_constancy(mixed)

        parts = KernelParts(
            scenario.e.element(e_terms),
            scenario.e_hat.element(e_hat_terms),
            mixed,
        )

        return parts

    def _check_constancy(self, mixed: dict[tuple[int, int], Fraction]):
        """The mixed degree 0 part must be constant: no mixed basic degree 1 term in dF."""
        scenario = self._scenario
        correspondence = scenario.correspondence
        size = scenario.e.size
        e_mask = (1 << size) - 1

        degree_one = scenario.kernel.d().basic_component(1)

        mixed_terms = {
            term: value
            for term, value in degree_one.terms.items()
            if term[0] & e_mask and term[0] >> size
        }

        if mixed_terms:
            mixed_part = correspondence.element(mixed_terms)

            raise KernelConstancyError(
                f"Mixed coefficients of the kernel are not constant: {mixed_part.render()}"
            )

    def _mixed_exponential(self, parts: KernelParts) -> TCElement:
        correspondence = self._scenario.correspondence
        size = self._scenario.e.size
        unit = correspondence.base.unit_index

        mixed = correspondence.element(
            {(left | right << size, unit): value for (left, right), value in parts.mixed.items()}
        )

        return mixed.exp_wedge()

    def check_nondegeneracy(self) -> NondegeneracyResult:
        scenario = self._scenario

        if scenario.e.size != scenario.e_hat.size:
            reason = (
                f"generator counts differ: {scenario.e.size} on E, {scenario.e_hat.size} on Ehat"
            )

            return NondegeneracyResult(False, reason=reason)

        parts = self.extract_kernel_parts()
        correspondence = scenario.correspondence
        exponential = self._mixed_exponential(parts)
        unit = correspondence.base.unit_index

        columns = []

        for mask in iter_masks(scenario.e.size):
            source = scenario.e.element({(mask, unit): Fraction(1)})
            product = exponential.wedge(correspondence.pullback(source, FiberSide.E))
            image = correspondence.push_forward(product, FiberSide.EHAT)

            columns.append({target: value for (target, _), value in image.terms.items()})

        matrix = ExactMatrix.from_columns(columns, 1 << scenario.e_hat.size)
        rank = matrix.rank()
        dimension = 1 << scenario.e.size

        result = NondegeneracyResult(rank == dimension, matrix, rank)

        if not result.is_nondegenerate:
            result.reason = f"fiber pairing has rank {rank} of {dimension}"

        _LOGGER.debug(f"Nondegeneracy of '{scenario.name}': {result}")

        return result

    def quadratic_shortcut(self) -> bool:
        """Invertibility of the matrix of the quadratic mixed part."""
        scenario = self._scenario
        parts = self.extract_kernel_parts()

        if not parts.is_quadratic:
            raise ShortcutNotApplicableError("Mixed part of the kernel is not quadratic")

        rows = {}

        for (left, right), value in parts.mixed.items():
            row = members(left)[0]
            column = members(right)[0]
            rows.setdefault(row, {})[column] = value

        matrix = ExactMatrix.from_rows(rows, (scenario.e.size, scenario.e_hat.size))

        if scenario.e.size != scenario.e_hat.size:
            return False

        is_invertible = matrix.determinant() != 0

        return is_invertible

    def verdict(self) -> DualityVerdict:
        scenario = self._scenario

        try:
            gerbe = self.check_gerbe_trivialization()

            if not gerbe.holds:
                return DualityVerdict(gerbe)

            try:
                nondegeneracy = self.check_nondegeneracy()

            except KernelConstancyError as ex:
                return DualityVerdict(gerbe, error=str(ex))

            try:
                shortcut = self.quadratic_shortcut()

            except ShortcutNotApplicableError:
                shortcut = None

            verdict = DualityVerdict(gerbe, nondegeneracy, shortcut)

            _LOGGER.info(f"Scenario '{scenario.name}' is T-dual: {verdict.is_dual}")

            return verdict

        except Exception as ex:
            exc_type, exc_obj, tb = sys.exc_info()
            line_number = tb.tb_lineno

            _LOGGER.error(
                f"Failed to check scenario '{scenario.name}', Error: {ex}, Line: {line_number}"
            )

            raise

    def kernel_exponential(self) -> TCElement:
        with self._lock:
            if self._exponential is None:
                self._exponential = self._scenario.kernel.exp_wedge()

            return self._exponential

    def tau_transform(self, element: TCElement) -> TCElement:
        """Right-module map x -> push forward of e^F ^ x onto Ehat."""
        correspondence = self._scenario.correspondence
        pulled = correspondence.pullback(element, FiberSide.E)
        product = self.kernel_exponential().wedge(pulled)

        image = correspondence.push_forward(product, FiberSide.EHAT)

        return image

    def tau_matrix(self) -> ExactMatrix:
        with self._lock:
            if self._transform_matrix is not None:
                return self._transform_matrix

        scenario = self._scenario
        matrix = scenario.e.operator_matrix(self.tau_transform, scenario.e_hat)

        with self._lock:
            self._transform_matrix = matrix

        return matrix

    def tau_inverse(self) -> ExactMatrix:
        matrix = self.tau_matrix()

        with self._lock:
            if self._inverse_matrix is not None:
                return self._inverse_matrix

        if matrix.row_count != matrix.column_count:
            raise SingularMatrixError(
                f"Transform of '{self._scenario.name}' maps dimension {matrix.column_count} to {matrix.row_count}"
            )

        inverse = matrix.inverse()

        with self._lock:
            self._inverse_matrix = inverse

        return inverse

    def is_tau_invertible(self) -> bool:
        try:
            self.tau_inverse()

        except SingularMatrixError:
            return False

        return True

    def verify_chain_map(self) -> ChainMapResult:
        """Compares tau o d^H with d^Hhat o tau on every basis element."""
        scenario = self._scenario
        transform = self.tau_matrix()

        source = scenario.e.differential_matrix(scenario.h)
        target = scenario.e_hat.differential_matrix(scenario.h_hat)

        left = transform @ source
        right = target @ transform

        if left == right:
            return ChainMapResult()

        difference = left - right

        for column in range(difference.column_count):
            defect = difference.column(column)

            if defect:
                mask, index = scenario.e.flat_term(column)
                witness = scenario.e.element({(mask, index): Fraction(1)})

                return ChainMapResult(witness, scenario.e_hat.element_from_vector(defect))

        return ChainMapResult()

    def check_dual_sphere_degree(self) -> DegreeCheckResult:
        """Lowest non-exact component of the fiber integral of H against deg(dual generator) + 1."""
        scenario = self._scenario

        if scenario.e.size != 1 or scenario.e_hat.size != 1:
            raise InvalidGeneratorError("Degree check needs single generator models on both sides")

        base = scenario.e.base
        integral = scenario.e.integrate_fiber(scenario.h)
        pushed = BaseElement(base, {index: value for (_, index), value in integral.terms.items()})

        expected = scenario.e_hat.generator_degree(0) + 1
        observed = None

        for degree in sorted(pushed.degrees):
            component = pushed.component(degree)

            if not base.is_exact(component):
                observed = degree
                break

        result = DegreeCheckResult(expected, observed)

        return result

