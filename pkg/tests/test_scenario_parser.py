from fractions import Fraction
import json

import pytest

from transduality.models.exceptions import ScenarioSemanticError, ScenarioSyntaxError

from .conftest import POSITIVE_SCENARIOS, load_scenario, scenario_path

MINIMAL = """
[base]
name = s4
elements = 1:0, u:4
product u*u = 0

[E]
generator psi:3 = u

[Ehat]
generator phat:3 = u
"""


@pytest.mark.parametrize("name", POSITIVE_SCENARIOS + ["broken"])
def test_render_round_trip(parser, name):
    scenario = load_scenario(name)

    restored = parser.parse(parser.render(scenario))

    assert restored == scenario
    assert restored.name == scenario.name
    assert restored.description == scenario.description


def test_defaults_without_scenario_block(parser):
    scenario = parser.parse(MINIMAL)

    assert scenario.name == "s4"
    assert scenario.description == ""
    assert scenario.h.is_zero
    assert scenario.h_hat.is_zero
    assert scenario.kernel.is_zero
    assert scenario.sections == {}
    assert scenario.e.name == "s4:E"


def test_comments_and_continuation_lines(parser):
    text = MINIMAL + "\n[H]\n# one term per line\n-psi (x) u\n\n[F]\npsi^phat\n+ 0\n"

    scenario = parser.parse(text)

    assert scenario == load_scenario("hopf_s4")


def test_syntax_error_location(parser):
    with pytest.raises(ScenarioSyntaxError) as info:
        parser.parse("[base]\nelements = 1:0, u:")

    assert info.value.line == 2


def test_syntax_error_in_expression_block(parser):
    with pytest.raises(ScenarioSyntaxError) as info:
        parser.parse(MINIMAL + "\n[H]\npsi (x\n")

    assert info.value.line == MINIMAL.count("\n") + 3


def test_content_outside_block(parser):
    with pytest.raises(ScenarioSyntaxError) as info:
        parser.parse("elements = 1:0", source="loose.scn")

    assert info.value.line == 1
    assert str(info.value).startswith("loose.scn:1:1")


def test_mixed_degree_transgression(parser):
    text = """
[base]
name = b
elements = 1:0, x:2, y:4
product x*x = y

[E]
generator psi:3 = x + y

[Ehat]
"""

    with pytest.raises(ScenarioSemanticError):
        parser.parse(text)


def test_even_generator_rejected(parser):
    with pytest.raises(ScenarioSemanticError):
        parser.parse(MINIMAL.replace("psi:3", "psi:4"))


def test_unknown_basis_label(parser):
    with pytest.raises(ScenarioSemanticError, match="Unknown basis label 'w'"):
        parser.parse(MINIMAL + "\n[H]\npsi (x) w\n")


def test_unknown_generator(parser):
    with pytest.raises(ScenarioSemanticError, match="Unknown generator 'chi'"):
        parser.parse(MINIMAL + "\n[H]\nchi^psi (x) u\n")


def test_missing_base_block(parser):
    with pytest.raises(ScenarioSemanticError, match="base"):
        parser.parse("[E]\ngenerator psi:3 = 0\n\n[Ehat]\n")


def test_json_scenario(parser):
    data = {
        "scenario": {"name": "hopf_s4"},
        "base": {"name": "s4", "elements": [["1", 0], ["u", 4]], "products": [["u", "u", "0"]]},
        "E": {"name": "S7", "generators": [["psi", 3, "u"]]},
        "Ehat": {"name": "S7-dual", "generators": [["phat", 3, "u"]]},
        "H": "-psi (x) u",
        "Hhat": "-phat (x) u",
        "F": "psi^phat",
    }

    scenario = parser.parse(json.dumps(data, indent=2))

    assert scenario == load_scenario("hopf_s4")


def test_json_syntax_error(parser):
    with pytest.raises(ScenarioSyntaxError) as info:
        parser.parse('{\n  "base": ,\n}')

    assert info.value.line == 2


def test_read_text_collects_blocks(parser):
    data = parser.read_text(scenario_path("hopf_s4").read_text(encoding="utf-8"))

    assert data["scenario"]["name"] == "hopf_s4"
    assert data["base"]["elements"] == [["1", 0], ["u", 4]]
    assert data["base"]["products"] == [["u", "u", "0"]]
    assert data["E"]["generators"] == [["psi", 3, "u"]]
    assert data["F"] == "psi^phat (x) 1"


def test_parse_element(parser, hopf):
    model = hopf.e
    base = model.base

    element = parser.parse_element(model, "2 * psi (x) u - 1/2 * u + 3 * 1")

    expected = model.monomial(["psi"], base.element({"u": 2})) + model.lift(
        base.element({"u": Fraction(-1, 2), "1": 3})
    )

    assert element == expected


def test_parse_element_repeated_generator(parser, hopf):
    assert parser.parse_element(hopf.e, "psi^psi (x) u").is_zero


def test_parse_element_identity_word(parser, hopf):
    assert parser.parse_element(hopf.e, "1 (x) u") == hopf.e.lift(hopf.e.base.element({"u": 1}))


def test_parse_base_expression_rejects_tensors(parser, hopf):
    with pytest.raises(ScenarioSemanticError, match="not a combination"):
        parser.parse_base_expression(hopf.e.base, "psi (x) u")


def test_parse_section(parser, hopf):
    section = parser.parse_section(hopf.e, "C: psi (x) u")

    assert not section.is_zero
    assert section.clifford.is_odd


def test_parse_section_even_clifford(parser, hopf):
    with pytest.raises(ScenarioSemanticError, match="Invalid section"):
        parser.parse_section(hopf.e, "C: 1")


def test_parse_section_unknown_factor(parser, hopf):
    with pytest.raises(ScenarioSemanticError, match="Unknown Clifford factor"):
        parser.parse_section(hopf.e, "C: chi")


def test_parse_section_vector_and_clifford(parser, t4_self_dual):
    section = parser.parse_section(t4_self_dual.e, "X: i1 - 2 * i2; C: dpsi2")

    assert section.vector == {"i1": 1, "i2": -2}
    assert section.clifford.is_odd


def test_load_missing_file(parser, tmp_path):
    with pytest.raises(ScenarioSemanticError, match="Cannot read"):
        parser.load(tmp_path / "missing.scn")


def test_load_sections(parser, tmp_path, t4_self_dual):
    path = tmp_path / "sections.scn"
    path.write_text("left = C: psi1\nright = X: i2\n", encoding="utf-8")

    sections = parser.load_sections(t4_self_dual.e, path)

    assert list(sections) == ["left", "right"]
    assert sections["left"] == t4_self_dual.sections["exterior"]
