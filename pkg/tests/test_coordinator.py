import pytest

from transduality.common.consts import CONFIG_ENV_VARIABLE
from transduality.common.enums import Command, ExitCode
from transduality.managers.config_manager import ConfigManager
from transduality.managers.coordinator import OPTION_FORM, OPTION_RECIPE, OPTION_SECTIONS, Coordinator

from .conftest import NON_CONNECTED_SCENARIO, POSITIVE_SCENARIOS, load_scenario, recipe_path, scenario_path


@pytest.fixture
async def coordinator(monkeypatch, tmp_path) -> Coordinator:
    monkeypatch.delenv(CONFIG_ENV_VARIABLE, raising=False)
    monkeypatch.chdir(tmp_path)

    config_manager = ConfigManager()
    await config_manager.initialize({"random_samples": 5, "max_workers": 2})

    return Coordinator(config_manager)


async def run_one(coordinator: Coordinator, command: Command, path, options: dict | None = None):
    results = await coordinator.run(command, [str(path)], options)

    assert len(results) == 1

    return results[0]


async def test_check_positive_batch(coordinator):
    paths = [str(scenario_path(name)) for name in POSITIVE_SCENARIOS]

    results = await coordinator.run(Command.CHECK, paths)

    assert [result.subject for result in results] == paths
    assert all(result.exit_code == ExitCode.SUCCESS for result in results), results


async def test_check_broken(coordinator):
    result = await run_one(coordinator, Command.CHECK, scenario_path("broken"))

    assert result.exit_code == ExitCode.NOT_DUAL
    assert not result.data["verdict"]["is_dual"]


async def test_check_missing_file(coordinator, tmp_path):
    result = await run_one(coordinator, Command.CHECK, tmp_path / "missing.scn")

    assert result.exit_code == ExitCode.INVALID_SCENARIO
    assert "Cannot read" in result.data["error"]


async def test_check_syntax_error(coordinator, tmp_path):
    path = tmp_path / "bad.scn"
    path.write_text("[base]\nelements = 1:0, u:\n", encoding="utf-8")

    result = await run_one(coordinator, Command.CHECK, path)

    assert result.exit_code == ExitCode.INVALID_SCENARIO


async def test_validate_fixture(coordinator):
    result = await run_one(coordinator, Command.VALIDATE, scenario_path("hopf_s4_circle"))

    assert result.exit_code == ExitCode.SUCCESS
    assert "validation" in result.data


async def test_validate_non_nilpotent_differential(coordinator, tmp_path):
    path = tmp_path / "bad_d.scn"
    path.write_text(
        "[base]\nname = b\nelements = 1:0, a:1, x:2\nd a = x\nd x = x\n\n[E]\n\n[Ehat]\n",
        encoding="utf-8",
    )

    result = await run_one(coordinator, Command.VALIDATE, path)

    assert result.exit_code == ExitCode.INVALID_SCENARIO


async def test_transform(coordinator, hopf):
    result = await run_one(
        coordinator, Command.TRANSFORM, scenario_path("hopf_s4"), {OPTION_FORM: "psi (x) u"}
    )

    assert result.exit_code == ExitCode.SUCCESS
    assert result.data["image"] == hopf.e_hat.lift(hopf.e.base.element({"u": 1})).render()


async def test_transform_needs_form(coordinator):
    result = await run_one(coordinator, Command.TRANSFORM, scenario_path("hopf_s4"))

    assert result.exit_code == ExitCode.INVALID_SCENARIO


async def test_cohomology_untwisted(coordinator):
    result = await run_one(coordinator, Command.COHOMOLOGY, scenario_path("hopf_s4"))

    dimensions = result.data["cohomology"]["dimensions"]

    assert result.exit_code == ExitCode.SUCCESS
    assert {key: value for key, value in dimensions.items() if value} == {"0": 1, "7": 1}


async def test_cohomology_twisted(monkeypatch, tmp_path):
    monkeypatch.delenv(CONFIG_ENV_VARIABLE, raising=False)
    monkeypatch.chdir(tmp_path)

    config_manager = ConfigManager()
    await config_manager.initialize({"twisted": True, "side": "Ehat"})

    results = await Coordinator(config_manager).run(Command.COHOMOLOGY, [str(scenario_path("hopf_s4"))])

    assert results[0].data["cohomology"]["dimensions"] == {"even": 0, "odd": 0}


async def test_bracket_fixture_sections(coordinator):
    result = await run_one(coordinator, Command.BRACKET, scenario_path("hopf_s4_circle"))

    assert result.exit_code == ExitCode.SUCCESS
    assert result.data["brackets_preserved"]
    assert set(result.data["images"]) == set(load_scenario("hopf_s4_circle").sections)


async def test_bracket_sections_file(coordinator, tmp_path):
    path = tmp_path / "sections.scn"
    path.write_text("[sections]\nodd = C: psi\nderivative = C: dpsi\n", encoding="utf-8")

    result = await run_one(
        coordinator, Command.BRACKET, scenario_path("hopf_s4"), {OPTION_SECTIONS: str(path)}
    )

    assert result.exit_code == ExitCode.SUCCESS
    assert len(result.data["brackets"]) == 4


async def test_bracket_without_sections(coordinator):
    result = await run_one(coordinator, Command.BRACKET, scenario_path("hopf_s4"))

    assert result.exit_code == ExitCode.INVALID_SCENARIO


async def test_construct(coordinator, parser):
    result = await run_one(coordinator, Command.CONSTRUCT, recipe_path("frame_rank2"), {OPTION_RECIPE: "frame-i"})

    assert result.exit_code == ExitCode.SUCCESS
    assert parser.parse(result.data["scenario_text"]) == load_scenario("frame_rank2")


async def test_construct_wrong_recipe_kind(coordinator):
    result = await run_one(coordinator, Command.CONSTRUCT, recipe_path("frame_rank2"), {OPTION_RECIPE: "sphere"})

    assert result.exit_code == ExitCode.INVALID_SCENARIO


async def test_construct_no_dual(coordinator):
    result = await run_one(coordinator, Command.CONSTRUCT, recipe_path("no_dual"))

    assert result.exit_code == ExitCode.BUILDER_FAILED


async def test_report_hopf(coordinator):
    result = await run_one(coordinator, Command.REPORT, scenario_path("hopf_s4"))

    data = result.data

    assert result.exit_code == ExitCode.SUCCESS
    assert data["twisted_square_failures"] == {"E": 0, "Ehat": 0}
    assert data["chain_map"]["is_chain_map"]
    assert data["transform_invertible"]
    assert "algebroid" in data
    assert "sphere_degree" in data


async def test_report_broken(coordinator):
    result = await run_one(coordinator, Command.REPORT, scenario_path("broken"))

    assert result.exit_code == ExitCode.NOT_DUAL
    assert "chain_map" not in result.data


@pytest.mark.parametrize(
    "command, options",
    [
        (Command.TRANSFORM, {OPTION_FORM: "psi (x) 1"}),
        (Command.COHOMOLOGY, None),
        (Command.BRACKET, None),
        (Command.CHECK, None),
    ],
)
async def test_non_connected_base_is_rejected(coordinator, tmp_path, command, options):
    path = tmp_path / "idem.scn"
    path.write_text(NON_CONNECTED_SCENARIO, encoding="utf-8")

    result = await run_one(coordinator, command, path, options)

    assert result.exit_code == ExitCode.INVALID_SCENARIO
    assert "degree 0 is not spanned by the unit" in result.text
