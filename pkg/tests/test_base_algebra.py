from fractions import Fraction

import pytest

from transduality.common.enums import ViolationKind
from transduality.managers.axiom_checker import AxiomChecker, validate_model, validate_scenario
from transduality.models.base_algebra import FiniteCDGA
from transduality.models.exceptions import InvalidAlgebraError, InvalidGeneratorError
from transduality.models.transgressive_model import OddGenerator, TransgressiveModel

from .conftest import POSITIVE_SCENARIOS, load_scenario


@pytest.mark.parametrize("name", POSITIVE_SCENARIOS + ["broken"])
def test_fixture_bases_are_valid(name):
    report = validate_scenario(load_scenario(name))

    assert report.is_valid, report.render()


def test_torus_base_is_valid(torus_base):
    report = AxiomChecker(torus_base).validate()

    assert report.is_valid, report.render()


def test_odd_square_breaks_commutativity():
    algebra = FiniteCDGA("bad", [("1", 0), ("a", 1), ("b", 2)], products={("a", "a"): {"b": 1}})

    assert ViolationKind.COMMUTATIVITY in AxiomChecker(algebra).validate().kinds


def test_differential_must_square_to_zero():
    algebra = FiniteCDGA(
        "bad",
        [("1", 0), ("a", 1), ("b", 2), ("c", 3)],
        differential={"a": {"b": 1}, "b": {"c": 1}},
    )

    report = AxiomChecker(algebra).validate()

    assert ViolationKind.D_SQUARED in report.kinds
    assert any(violation.witness == ("a",) for violation in report.violations)


def test_degree_zero_must_be_spanned_by_unit():
    algebra = FiniteCDGA("bad", [("1", 0), ("e", 0)], products={("e", "e"): {"e": 1}})

    assert ViolationKind.CONNECTIVITY in AxiomChecker(algebra).validate().kinds


def test_contraction_must_square_to_zero():
    algebra = FiniteCDGA(
        "bad",
        [("1", 0), ("a", 1), ("b", 2)],
        contractions={"i": {"a": {"1": 1}, "b": {"a": 1}}},
    )

    assert ViolationKind.CONTRACTION_SQUARE in AxiomChecker(algebra).validate().kinds


def test_product_in_wrong_degree():
    algebra = FiniteCDGA("bad", [("1", 0), ("x", 2), ("y", 3)], products={("x", "x"): {"y": 1}})

    assert ViolationKind.DEGREE in AxiomChecker(algebra).validate().kinds


def test_unknown_labels_and_duplicates():
    with pytest.raises(InvalidAlgebraError):
        FiniteCDGA("bad", [("1", 0), ("x", 2), ("x", 2)])

    with pytest.raises(InvalidAlgebraError):
        FiniteCDGA("bad", [("1", 0), ("x", 2)], products={("x", "z"): {"x": 1}})

    with pytest.raises(InvalidAlgebraError):
        FiniteCDGA("bad", [("x", 2)])


def test_cohomology_of_relation_base():
    algebra = load_scenario("relation_dual").e.base

    assert [len(algebra.cohomology_basis(degree)) for degree in range(5)] == [1, 0, 2, 0, 0]

    w = algebra.element({"w": 1})
    primitive = algebra.solve_primitive(w)

    assert primitive == algebra.element({"h": -1})
    assert algebra.is_exact(w)
    assert not algebra.is_exact(algebra.element({"x": 1}))


def test_cohomology_of_torus(torus_base):
    assert [len(torus_base.cohomology_basis(degree)) for degree in range(4)] == [1, 3, 3, 1]


def test_element_arithmetic(torus_base):
    t1 = torus_base.element({"t1": 1})
    t2 = torus_base.element({"t2": 1})

    assert t1 * t2 == -(t2 * t1)
    assert (t1 * t1).is_zero
    assert (t1 + t2).degree == 1
    assert (t1 * t2).coefficient("t12") == Fraction(1)
    assert torus_base.contract("i2", t1 * t2) == -t1


def test_model_rejects_bad_generators():
    algebra = load_scenario("hopf_s4").e.base
    u = algebra.element({"u": 1})

    with pytest.raises(InvalidGeneratorError):
        TransgressiveModel(algebra, [OddGenerator("psi", 2, u)])

    with pytest.raises(InvalidGeneratorError):
        TransgressiveModel(algebra, [OddGenerator("psi", 5, u)])

    with pytest.raises(InvalidGeneratorError):
        TransgressiveModel(algebra, [OddGenerator("u", 3, u)])


def test_validate_model_on_fixture():
    report = validate_model(load_scenario("frame_rank2").e)

    assert report.is_valid
    assert report.to_dict()


def test_lie_derivative_is_checked_as_derivation():
    """L = d i + i d scales both a and x = da by one."""
    algebra = FiniteCDGA(
        "euler",
        [("1", 0), ("a", 1), ("x", 2)],
        differential={"a": {"x": 1}},
        contractions={"i": {"x": {"a": 1}}},
    )
    a = algebra.element({"a": 1})
    x = algebra.element({"x": 1})

    assert algebra.lie_derivative("i", a) == a
    assert algebra.lie_derivative("i", x) == x
    assert algebra.lie_derivative("i", algebra.one()).is_zero

    report = AxiomChecker(algebra).validate()

    assert ViolationKind.LIE_DERIVATION not in report.kinds
    assert ViolationKind.CONTRACTION_DERIVATION not in report.kinds
