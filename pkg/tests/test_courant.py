from functools import cache
from itertools import product

from hypothesis import given, settings, strategies as st
import pytest

from transduality.common.enums import FiberSide
from transduality.common.monomials import iter_masks, popcount
from transduality.managers.courant_calculator import (
    SUMMAND_DERIVATIVE,
    SUMMAND_EXTERIOR,
    SUMMAND_ODD_FORMS,
    SUMMAND_PROJECTION,
    SUMMAND_TANGENT,
    CourantCalculator,
    SectionTransformer,
)
from transduality.managers.duality_checker import DualityChecker
from transduality.models.clifford import CliffordElement, CliffordSection
from transduality.models.exceptions import DecompositionError, InvalidElementError
from transduality.models.transgressive_model import OddGenerator, TransgressiveModel

from .conftest import POSITIVE_SCENARIOS, SECTION_SCENARIOS, load_scenario

VECTORS = ["i1", "i2", "i3"]
FORMS = ["t1", "t2", "t3"]


def _torus_sections(model) -> dict[str, CliffordSection]:
    sections = {name: CliffordSection(model, {name: 1}) for name in VECTORS}

    for label in FORMS:
        multiplication = CliffordElement.left_multiplication(model, model.base.element({label: 1}))
        sections[label] = CliffordSection(model, {}, multiplication)

    return sections


def test_torus_bracket_is_twisted_dorfman(torus_base):
    """Constant fields on T^3 bracket to -iota_Y iota_X H; forms bracket trivially."""
    model = TransgressiveModel(torus_base, [], "T3")
    flux = torus_base.element({"t123": 1})
    calculator = CourantCalculator(model, model.lift(flux))
    sections = _torus_sections(model)

    for (first_name, first), (second_name, second) in product(sections.items(), repeat=2):
        bracket = calculator.derived_bracket(first, second)

        if first_name in VECTORS and second_name in VECTORS:
            contracted = torus_base.contract(second_name, torus_base.contract(first_name, flux))
            expected = CliffordSection(
                model, {}, CliffordElement.left_multiplication(model, -contracted)
            )

        else:
            expected = CliffordSection(model)

        assert bracket == expected, f"[{first_name}, {second_name}] = {bracket.render()}"


def test_untwisted_torus_fields_commute(torus_base):
    model = TransgressiveModel(torus_base, [], "T3")
    calculator = CourantCalculator(model)
    sections = _torus_sections(model)

    assert calculator.derived_bracket(sections["i1"], sections["i2"]).is_zero


def test_clifford_relations():
    model = load_scenario("t4_usual").e
    identity = CliffordElement.identity(model)

    for first, second in product(model.labels, repeat=2):
        exterior = CliffordElement.exterior(model, first)
        derivative = CliffordElement.derivative(model, second)

        anticommutator = derivative @ exterior + exterior @ derivative
        expected = identity if first == second else CliffordElement(model)

        assert anticommutator == expected

        other_exterior = CliffordElement.exterior(model, second)
        other_derivative = CliffordElement.derivative(model, first)

        assert (exterior @ other_exterior + other_exterior @ exterior).is_zero
        assert (derivative @ other_derivative + other_derivative @ derivative).is_zero


@given(data=st.data())
def test_operator_matrix_matches_action(data):
    model = load_scenario("hopf_s4_circle").e
    base = model.base
    label = data.draw(st.sampled_from(list(base.labels)))
    word = data.draw(st.lists(st.sampled_from(["psi", "dpsi"]), max_size=3))

    clifford = CliffordElement.identity(model)

    for factor in word:
        if factor == "psi":
            clifford = clifford @ CliffordElement.exterior(model, "psi")

        else:
            clifford = clifford @ CliffordElement.derivative(model, "psi")

    clifford = clifford @ CliffordElement.left_multiplication(model, base.element({label: 1}))

    terms = data.draw(
        st.dictionaries(st.sampled_from(model.basis()), st.integers(min_value=-3, max_value=3).filter(bool), max_size=4)
    )
    element = model.element(terms)

    assert clifford.to_operator().apply(element.vector()) == clifford.act(element).vector()


def test_sections_must_be_odd(hopf):
    with pytest.raises(InvalidElementError):
        CliffordSection(hopf.e, {}, CliffordElement.identity(hopf.e))

    with pytest.raises(InvalidElementError):
        CliffordSection(hopf.e, {"i1": 1})


def test_even_operator_is_not_a_section(hopf):
    calculator = CourantCalculator(hopf.e, hopf.h)

    with pytest.raises(DecompositionError):
        calculator.decompose_operator(CliffordElement.identity(hopf.e).to_operator())


def test_decomposition_recovers_sections():
    scenario = load_scenario("hopf_s4_circle")
    calculator = CourantCalculator(scenario.e, scenario.h)

    for section in scenario.sections.values():
        assert calculator.decompose_operator(calculator.section_operator(section)) == section


def test_torus_algebroid_decomposition(torus_base):
    model = TransgressiveModel(torus_base, [OddGenerator("psi", 1, torus_base.zero())])
    decomposition = CourantCalculator(model).sphere_algebroid_decomposition()

    assert decomposition.ranks == {
        SUMMAND_TANGENT: 3,
        SUMMAND_ODD_FORMS: 4,
        SUMMAND_DERIVATIVE: 4,
        SUMMAND_EXTERIOR: 4,
        SUMMAND_PROJECTION: 4,
    }
    assert decomposition.is_direct


def test_point_algebroid_decomposition(point_base):
    model = TransgressiveModel(point_base, [OddGenerator("psi", 3, point_base.zero())])
    decomposition = CourantCalculator(model).sphere_algebroid_decomposition()

    assert list(decomposition.ranks.values()) == [0, 0, 1, 1, 0]
    assert decomposition.is_direct


def test_hopf_section_map(hopf, parser):
    transformer = SectionTransformer(hopf)

    derivative = parser.parse_section(hopf.e, "C: dpsi")
    exterior = parser.parse_section(hopf.e, "C: psi")

    assert transformer.tduality_section_map(derivative) == parser.parse_section(hopf.e_hat, "C: -phat")
    assert transformer.tduality_section_map(exterior) == parser.parse_section(hopf.e_hat, "C: -dphat")

    projection = CliffordElement.derivative(hopf.e, "psi") @ CliffordElement.exterior(hopf.e, "psi")
    dual = CliffordElement.exterior(hopf.e_hat, "phat") @ CliffordElement.derivative(hopf.e_hat, "phat")

    assert transformer.conjugate(projection.to_operator()) == dual.to_operator()


@pytest.mark.parametrize("name", SECTION_SCENARIOS)
def test_section_map_intertwines_transform(name):
    scenario = load_scenario(name)
    checker = DualityChecker(scenario)
    transformer = SectionTransformer(scenario, checker)
    transform = checker.tau_matrix()

    for section in scenario.sections.values():
        image = transformer.tduality_section_map(section)

        left = transformer.target.section_operator(image) @ transform
        right = transform @ transformer.source.section_operator(section)

        assert left == right, section.render()


@pytest.mark.parametrize("name", SECTION_SCENARIOS)
def test_section_map_preserves_brackets(name):
    scenario = load_scenario(name)
    transformer = SectionTransformer(scenario)

    for first, second in product(scenario.sections.values(), repeat=2):
        assert transformer.preserves_bracket(first, second)


def test_vector_fields_are_fixed_by_the_section_map():
    scenario = load_scenario("hopf_s4_circle")
    transformer = SectionTransformer(scenario)
    image = transformer.tduality_section_map(scenario.sections["vector"])

    assert image.vector == scenario.sections["vector"].vector
    assert image.clifford.is_zero


@pytest.mark.parametrize("name", SECTION_SCENARIOS)
def test_fixture_brackets_are_sections(name):
    scenario = load_scenario(name)
    calculator = CourantCalculator(scenario.e, scenario.h)

    for first, second in product(scenario.sections.values(), repeat=2):
        bracket = calculator.derived_bracket(first, second)

        assert bracket.clifford.is_odd


@cache
def _basis_sections(name: str) -> tuple[CliffordSection, ...]:
    """Contraction vector fields plus every odd matrix unit times a base basis element, on E."""
    model = load_scenario(name).e
    base = model.base

    sections = [CliffordSection(model, {vector: 1}) for vector in base.contraction_names]

    for row, column in product(iter_masks(model.size), repeat=2):
        for index in range(base.dimension):
            if (popcount(row) + popcount(column) + base.degree(index)) % 2:
                element = base.basis_element(index)
                unit = CliffordElement.matrix_unit(model, row, column, element)
                sections.append(CliffordSection(model, {}, unit))

    return tuple(sections)


def test_basis_section_counts():
    assert len(_basis_sections("hopf_s4_circle")) == 9
    assert len(_basis_sections("t4_self_dual")) == 514


@pytest.mark.parametrize("name", POSITIVE_SCENARIOS)
@pytest.mark.parametrize("side", list(FiberSide))
def test_twisted_d_operator_matches_model(name, side):
    scenario = load_scenario(name)
    model = scenario.model(side)
    operator = CourantCalculator(model, scenario.twist(side)).build_twisted_d_operator()

    assert operator == model.differential_matrix(scenario.twist(side))
    assert (operator @ operator).is_zero


def test_twist_must_be_closed(hopf):
    with pytest.raises(InvalidElementError, match="not closed"):
        CourantCalculator(hopf.e, hopf.e.generator("psi"))


def test_bracket_leibniz_on_torus(torus_base):
    model = TransgressiveModel(torus_base, [], "T3")
    flux = torus_base.element({"t123": 1})
    calculator = CourantCalculator(model, model.lift(flux))

    sections = list(_torus_sections(model).values())
    sections.append(CliffordSection(model, {}, CliffordElement.left_multiplication(model, flux)))

    bracket = calculator.derived_bracket

    for first, second, third in product(sections, repeat=3):
        left = bracket(first, bracket(second, third))
        right = bracket(bracket(first, second), third) + bracket(second, bracket(first, third))

        assert left == right


@pytest.mark.parametrize("name", SECTION_SCENARIOS)
def test_bracket_leibniz_on_fixture_sections(name):
    scenario = load_scenario(name)
    calculator = CourantCalculator(scenario.e, scenario.h)
    sections = list(scenario.sections.values())
    bracket = calculator.derived_bracket

    for first, second, third in product(sections, repeat=3):
        left = bracket(first, bracket(second, third))
        right = bracket(bracket(first, second), third) + bracket(second, bracket(first, third))

        assert left == right, f"{first.render()}, {second.render()}, {third.render()}"


@pytest.mark.parametrize("name", SECTION_SCENARIOS)
def test_section_map_intertwines_transform_on_basis(name):
    scenario = load_scenario(name)
    checker = DualityChecker(scenario)
    transformer = SectionTransformer(scenario, checker)
    transform = checker.tau_matrix()

    for section in _basis_sections(name):
        image = transformer.tduality_section_map(section)

        left = transformer.target.section_operator(image) @ transform
        right = transform @ transformer.source.section_operator(section)

        assert left == right, section.render()


def test_section_map_preserves_all_basis_brackets():
    scenario = load_scenario("hopf_s4_circle")
    transformer = SectionTransformer(scenario)
    sections = _basis_sections("hopf_s4_circle")

    for first, second in product(sections, repeat=2):
        assert transformer.preserves_bracket(first, second), (
            f"{first.render()}, {second.render()}"
        )


@settings(max_examples=20)
@given(data=st.data())
def test_section_map_preserves_torus_basis_brackets(data):
    transformer = SectionTransformer(load_scenario("t4_self_dual"))
    sections = _basis_sections("t4_self_dual")

    first = data.draw(st.sampled_from(sections))
    second = data.draw(st.sampled_from(sections))

    assert transformer.preserves_bracket(first, second)
