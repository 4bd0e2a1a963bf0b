import pytest

from transduality.common.enums import CohomologyGrading, Parity
from transduality.managers.cohomology_calculator import CohomologyCalculator
from transduality.managers.duality_checker import DualityChecker
from transduality.models.exceptions import InvalidElementError
from transduality.models.transgressive_model import TransgressiveModel

from .conftest import load_scenario


def test_hopf_total_space(hopf):
    table = CohomologyCalculator().cohomology_dims(hopf.e)

    assert table.grading == CohomologyGrading.DEGREE
    assert {degree: dimension for degree, dimension in table.dimensions.items() if dimension} == {0: 1, 7: 1}
    assert table.euler_characteristic == 0


def test_hopf_twisted_cohomology_vanishes(hopf):
    table = CohomologyCalculator().twisted_cohomology_dims(hopf.e, hopf.h)

    assert table.grading == CohomologyGrading.PARITY
    assert table.dimensions == {Parity.EVEN: 0, Parity.ODD: 0}


def test_twisted_cohomology_agrees_on_dual_sides(positive_scenario):
    calculator = CohomologyCalculator()
    comparison = calculator.compare_duals(positive_scenario, DualityChecker(positive_scenario))

    assert comparison.dimensions_agree, comparison.render()
    assert comparison.images_closed
    assert comparison.images_span
    assert comparison.is_isomorphic


def test_untwisted_parity_of_self_dual_torus(t4_self_dual):
    calculator = CohomologyCalculator()
    table = calculator.twisted_cohomology_dims(t4_self_dual.e, t4_self_dual.h)
    untwisted = calculator.cohomology_dims(t4_self_dual.e)

    assert table.dimensions == untwisted.as_parity()


def test_base_cohomology(torus_base):
    table = CohomologyCalculator().base_cohomology(torus_base)

    assert table.dimensions == {0: 1, 1: 3, 2: 3, 3: 1}
    assert table.total == 8


def test_pullback_kernel_and_ideal(hopf):
    calculator = CohomologyCalculator()
    u = hopf.e.base.element({"u": 1})

    assert calculator.pullback_kernel(hopf.e) == {4: [u]}
    assert calculator.principal_ideal_dimensions(hopf.e) == {4: 1}


def test_exactness(hopf):
    calculator = CohomologyCalculator()
    model = hopf.e
    u = model.lift(model.base.element({"u": 1}))

    assert calculator.is_exact(model, u)
    assert not calculator.is_exact(model, model.one())
    assert calculator.is_exact(model, u, hopf.h)
    assert calculator.is_exact(model, model.monomial(["psi"], model.base.element({"u": 1})), hopf.h)
    assert not calculator.is_exact(model, model.one(), hopf.h)


def test_representatives_are_closed():
    scenario = load_scenario("frame_rank2")
    table = CohomologyCalculator().twisted_cohomology_dims(scenario.e, scenario.h)

    for elements in table.representatives.values():
        for element in elements:
            assert scenario.e.twisted_differential(scenario.h, element).is_zero


def test_twisted_cohomology_of_three_torus(torus_base):
    model = TransgressiveModel(torus_base, [], "T3")
    flux = model.lift(torus_base.element({"t123": 1}))

    table = CohomologyCalculator().twisted_cohomology_dims(model, flux)

    assert table.dimensions == {Parity.EVEN: 3, Parity.ODD: 3}

    for parity in Parity:
        for representative in table.representatives[parity]:
            assert model.twisted_differential(flux, representative).is_zero


def test_twisted_cohomology_needs_closed_twist(hopf):
    with pytest.raises(InvalidElementError, match="not closed"):
        CohomologyCalculator().twisted_cohomology_dims(hopf.e, hopf.e.generator("psi"))
