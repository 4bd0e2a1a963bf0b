"""Exhaustive checks of the CDGA and transgressive model axioms on basis elements."""
from fractions import Fraction
import logging
import sys

from ..common.enums import ViolationKind
from ..common.linear_algebra import SparseVector, add_vectors
from ..models.base_algebra import FiniteCDGA
from ..models.duality_scenario import DualityScenario
from ..models.transgressive_model import TransgressiveModel
from ..models.validation_report import ValidationReport

_LOGGER = logging.getLogger(__name__)


def _sign(*degrees: int) -> int:
    """(-1) to the product of the given degrees."""
    odd = all(degree % 2 for degree in degrees)
    sign = -1 if odd else 1

    return sign


class AxiomChecker:
    _algebra: FiniteCDGA

    def __init__(self, algebra: FiniteCDGA):
        self._algebra = algebra

    def _product(self, left: SparseVector, right: SparseVector) -> SparseVector:
        return self._algebra.multiply_vectors(left, right)

    def _d(self, vector: SparseVector) -> SparseVector:
        return self._algebra.differentiate_vector(vector)

    def validate(self) -> ValidationReport:
        algebra = self._algebra
        report = ValidationReport(f"algebra '{algebra.name}'")

        try:
            self._check_connectivity(report)
            self._check_degrees(report)
            self._check_products(report)
            self._check_associativity(report)
            self._check_differential(report)
            self._check_contractions(report)

        except Exception as ex:
            exc_type, exc_obj, tb = sys.exc_info()
            line_number = tb.tb_lineno

            _LOGGER.error(
                f"Failed to validate '{algebra.name}', Error: {ex}, Line: {line_number}"
            )

            raise

        _LOGGER.info(
            f"Validated algebra '{algebra.name}', Violations: {len(report.violations)}"
        )

        return report

    def _check_connectivity(self, report: ValidationReport):
        algebra = self._algebra
        unit = algebra.unit_index

        if algebra.degree(unit) != 0:
            report.add(ViolationKind.CONNECTIVITY, "unit is not of degree 0", algebra.unit_label)

        others = [index for index in algebra.indices_of_degree(0) if index != unit]

        if others:
            report.add(
                ViolationKind.CONNECTIVITY,
                "degree 0 is not spanned by the unit",
                *[algebra.label(index) for index in others],
            )

    def _check_degrees(self, report: ValidationReport):
        algebra = self._algebra

        for left in range(algebra.dimension):
            for right in range(algebra.dimension):
                expected = algebra.degree(left) + algebra.degree(right)

                for index in algebra.basis_product(left, right):
                    if algebra.degree(index) != expected:
                        report.add(
                            ViolationKind.DEGREE,
                            f"product lands in degree {algebra.degree(index)}, expected {expected}",
                            algebra.label(left),
                            algebra.label(right),
                        )

                        break

        for index in range(algebra.dimension):
            expected = algebra.degree(index) + 1

            for target in algebra.basis_differential(index):
                if algebra.degree(target) != expected:
                    report.add(
                        ViolationKind.DEGREE,
                        f"differential lands in degree {algebra.degree(target)}, expected {expected}",
                        algebra.label(index),
                    )

                    break

    def _check_products(self, report: ValidationReport):
        algebra = self._algebra
        unit = {algebra.unit_index: Fraction(1)}

        for index in range(algebra.dimension):
            basis = {index: Fraction(1)}

            if self._product(unit, basis) != basis or self._product(basis, unit) != basis:
                report.add(ViolationKind.UNIT, "unit does not act trivially", algebra.label(index))

        for left in range(algebra.dimension):
            for right in range(left, algebra.dimension):
                forward = algebra.basis_product(left, right)
                backward = algebra.basis_product(right, left)
                sign = _sign(algebra.degree(left), algebra.degree(right))

                expected = {index: sign * value for index, value in backward.items()}

                if forward != expected:
                    report.add(
                        ViolationKind.COMMUTATIVITY,
                        "product is not graded commutative",
                        algebra.label(left),
                        algebra.label(right),
                    )

    def _check_associativity(self, report: ValidationReport):
        algebra = self._algebra
        dimension = algebra.dimension

        for first in range(dimension):
            for second in range(dimension):
                left_pair = algebra.basis_product(first, second)

                for third in range(dimension):
                    left = self._product(left_pair, {third: Fraction(1)})
                    right = self._product(
                        {first: Fraction(1)}, algebra.basis_product(second, third)
                    )

                    if left != right:
                        report.add(
                            ViolationKind.ASSOCIATIVITY,
                            "product is not associative",
                            algebra.label(first),
                            algebra.label(second),
                            algebra.label(third),
                        )

    def _check_differential(self, report: ValidationReport):
        algebra = self._algebra

        for index in range(algebra.dimension):
            if self._d(self._d({index: Fraction(1)})):
                report.add(ViolationKind.D_SQUARED, "d^2 does not vanish", algebra.label(index))

        for left in range(algebra.dimension):
            for right in range(algebra.dimension):
                left_vector = {left: Fraction(1)}
                right_vector = {right: Fraction(1)}

                expected = self._product(self._d(left_vector), right_vector)
                sign = -1 if algebra.degree(left) % 2 else 1
                add_vectors(expected, self._product(left_vector, self._d(right_vector)), Fraction(sign))

                actual = self._d(algebra.basis_product(left, right))

                if actual != expected:
                    report.add(
                        ViolationKind.LEIBNIZ,
                        "d is not a graded derivation",
                        algebra.label(left),
                        algebra.label(right),
                    )

    def _check_contractions(self, report: ValidationReport):
        algebra = self._algebra
        names = algebra.contraction_names

        for name in names:
            for index in range(algebra.dimension):
                for target in algebra.basis_contraction(name, index):
                    if algebra.degree(target) != algebra.degree(index) - 1:
                        report.add(
                            ViolationKind.CONTRACTION_DEGREE,
                            f"contraction '{name}' does not lower the degree by one",
                            algebra.label(index),
                        )

                        break

                twice = algebra.contract_vector(name, algebra.basis_contraction(name, index))

                if twice:
                    report.add(
                        ViolationKind.CONTRACTION_SQUARE,
                        f"contraction '{name}' does not square to zero",
                        algebra.label(index),
                    )

            for left in range(algebra.dimension):
                for right in range(algebra.dimension):
                    self._check_derivation(report, name, left, right)

        for position, first in enumerate(names):
            for second in names[position + 1:]:
                for index in range(algebra.dimension):
                    basis = {index: Fraction(1)}

                    total = algebra.contract_vector(first, algebra.contract_vector(second, basis))
                    add_vectors(
                        total,
                        algebra.contract_vector(second, algebra.contract_vector(first, basis)),
                    )

                    if total:
                        report.add(
                            ViolationKind.CONTRACTION_ANTICOMMUTATION,
                            f"contractions '{first}' and '{second}' do not anticommute",
                            algebra.label(index),
                        )

    def _check_derivation(self, report: ValidationReport, name: str, left: int, right: int):
        algebra = self._algebra
        left_vector = {left: Fraction(1)}
        right_vector = {right: Fraction(1)}
        product = algebra.basis_product(left, right)

        expected = self._product(algebra.contract_vector(name, left_vector), right_vector)
        sign = -1 if algebra.degree(left) % 2 else 1
        add_vectors(
            expected,
            self._product(left_vector, algebra.contract_vector(name, right_vector)),
            Fraction(sign),
        )

        if algebra.contract_vector(name, product) != expected:
            report.add(
                ViolationKind.CONTRACTION_DERIVATION,
                f"contraction '{name}' is not a graded derivation",
                algebra.label(left),
                algebra.label(right),
            )

        left_element = algebra.basis_element(left)
        right_element = algebra.basis_element(right)

        lie_expected = (
            algebra.lie_derivative(name, left_element) * right_element
            + left_element * algebra.lie_derivative(name, right_element)
        )

        if algebra.lie_derivative(name, left_element * right_element) != lie_expected:
            report.add(
                ViolationKind.LIE_DERIVATION,
                f"Lie derivative along '{name}' is not a derivation",
                algebra.label(left),
                algebra.label(right),
            )


def validate_model(model: TransgressiveModel) -> ValidationReport:
    """Validates the base algebra and the transgression data of a model."""
    report = ValidationReport(f"model '{model.name}'")
    report.merge(AxiomChecker(model.base).validate())

    for generator in model.generators:
        transgression = generator.transgression

        if generator.degree % 2 == 0:
            report.add(
                ViolationKind.GENERATOR_DEGREE,
                f"generator has even degree {generator.degree}",
                generator.label,
            )

        if not transgression.is_closed:
            report.add(ViolationKind.TRANSGRESSION, "transgression is not closed", generator.label)

        if not transgression.is_zero and transgression.degree != generator.degree + 1:
            report.add(
                ViolationKind.TRANSGRESSION,
                f"transgression is not of degree {generator.degree + 1}",
                generator.label,
            )

    return report


def validate_scenario(scenario: DualityScenario) -> ValidationReport:
    report = ValidationReport(f"scenario '{scenario.name}'")
    report.merge(AxiomChecker(scenario.e.base).validate())

    for model in (scenario.e, scenario.e_hat):
        model_report = ValidationReport(f"model '{model.name}'")

        for generator in model.generators:
            if not generator.transgression.is_closed:
                model_report.add(
                    ViolationKind.TRANSGRESSION, "transgression is not closed", generator.label
                )

        report.merge(model_report)

    return report
