import json

import pytest

from transduality.cli import build_parser, main
from transduality.common.consts import CONFIG_ENV_VARIABLE

from .conftest import NON_CONNECTED_SCENARIO, load_scenario, recipe_path, scenario_path


@pytest.fixture(autouse=True)
def isolated(monkeypatch, tmp_path):
    monkeypatch.delenv(CONFIG_ENV_VARIABLE, raising=False)
    monkeypatch.chdir(tmp_path)


def test_check_success(capsys):
    exit_code = main(["check", str(scenario_path("hopf_s4"))])

    output = capsys.readouterr().out

    assert exit_code == 0
    assert output.startswith("== check")
    assert "nondegeneracy matrix:" in output


def test_check_returns_worst_exit_code():
    exit_code = main(["check", str(scenario_path("hopf_s4")), str(scenario_path("broken"))])

    assert exit_code == 1


def test_machine_output(capsys):
    exit_code = main(["check", "--machine", str(scenario_path("t4_usual")), str(scenario_path("broken"))])

    report = json.loads(capsys.readouterr().out)
    results = report["results"]

    assert exit_code == 1
    assert [result["exit_code"] for result in results] == [0, 1]
    assert results[0]["command"] == "check"
    assert results[0]["verdict"]["is_dual"]


def test_transform(capsys):
    exit_code = main(["transform", str(scenario_path("hopf_s4")), "--form", "psi"])

    assert exit_code == 0
    assert "tau(" in capsys.readouterr().out


def test_transform_on_non_connected_base(tmp_path, capsys):
    path = tmp_path / "idem.scn"
    path.write_text(NON_CONNECTED_SCENARIO, encoding="utf-8")

    exit_code = main(["transform", str(path), "--form", "psi (x) 1"])

    assert exit_code == 2
    assert "not spanned by the unit" in capsys.readouterr().out


def test_cohomology_twisted(capsys):
    exit_code = main(["cohomology", "--twisted", "--machine", str(scenario_path("hopf_s4"))])

    report = json.loads(capsys.readouterr().out)

    assert exit_code == 0
    assert report["results"][0]["cohomology"]["grading"] == "parity"


def test_construct_writes_output(tmp_path, parser):
    output = tmp_path / "built.scn"

    exit_code = main(["construct", "sphere", str(recipe_path("hopf_s4")), "--output", str(output)])

    assert exit_code == 0
    assert parser.load(output) == load_scenario("hopf_s4")


def test_construct_failure_writes_nothing(tmp_path):
    output = tmp_path / "built.scn"

    exit_code = main(["construct", "sphere", str(recipe_path("no_dual")), "--output", str(output)])

    assert exit_code == 3
    assert not output.exists()


def test_invalid_configuration(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text('{"max_workers": 0}', encoding="utf-8")

    exit_code = main(["check", "--config", str(config), str(scenario_path("hopf_s4"))])

    assert exit_code == 2
    assert "invalid configuration" in capsys.readouterr().err


def test_missing_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_unknown_recipe_kind():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["construct", "cylinder", "recipe.json"])
