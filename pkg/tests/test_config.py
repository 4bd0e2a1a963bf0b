import json
import logging

import pytest
import voluptuous as vol

from transduality.common.consts import CONFIG_ENV_VARIABLE, DEFAULT_MAX_WORKERS, DEFAULT_RANDOM_SAMPLES
from transduality.common.enums import FiberSide
from transduality.managers.config_manager import ConfigManager


@pytest.fixture(autouse=True)
def isolated(monkeypatch, tmp_path):
    monkeypatch.delenv(CONFIG_ENV_VARIABLE, raising=False)
    monkeypatch.chdir(tmp_path)


def write_config(tmp_path, data) -> str:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data) if not isinstance(data, str) else data, encoding="utf-8")

    return str(path)


async def test_defaults():
    config_manager = ConfigManager()

    await config_manager.initialize()

    config_data = config_manager.config_data

    assert config_manager.is_initialized
    assert config_manager.config_path is None
    assert config_data.log_level == "WARNING"
    assert not config_data.machine_output
    assert config_data.random_samples == DEFAULT_RANDOM_SAMPLES
    assert config_data.max_workers == DEFAULT_MAX_WORKERS
    assert config_data.side == FiberSide.E
    assert not config_data.twisted


async def test_file_values(tmp_path):
    path = write_config(tmp_path, {"log_level": "debug", "max_workers": 2, "side": "Ehat", "twisted": True})
    config_manager = ConfigManager(path)

    await config_manager.initialize()

    config_data = config_manager.config_data

    assert config_data.log_level == "DEBUG"
    assert config_data.max_workers == 2
    assert config_data.side == FiberSide.EHAT
    assert config_data.twisted


async def test_environment_variable(tmp_path, monkeypatch):
    path = write_config(tmp_path, {"random_seed": 7})
    monkeypatch.setenv(CONFIG_ENV_VARIABLE, path)

    config_manager = ConfigManager()
    await config_manager.initialize()

    assert config_manager.config_data.random_seed == 7


async def test_default_file_in_working_directory(tmp_path):
    (tmp_path / "transduality.config.json").write_text('{"random_samples": 3}', encoding="utf-8")

    config_manager = ConfigManager()
    await config_manager.initialize()

    assert config_manager.config_data.random_samples == 3


async def test_overrides_win_over_file(tmp_path):
    path = write_config(tmp_path, {"max_workers": 2, "machine_output": False})
    config_manager = ConfigManager(path)

    await config_manager.initialize({"max_workers": 8, "machine_output": True, "side": None})

    config_data = config_manager.config_data

    assert config_data.max_workers == 8
    assert config_data.machine_output
    assert config_data.side == FiberSide.E


@pytest.mark.parametrize(
    "data",
    [
        {"max_workers": 0},
        {"random_samples": -1},
        {"side": "F"},
        {"log_level": "LOUD"},
        {"twisted": "yes"},
    ],
)
async def test_invalid_values(tmp_path, data):
    config_manager = ConfigManager(write_config(tmp_path, data))

    with pytest.raises(vol.Invalid):
        await config_manager.initialize()

    assert not config_manager.is_initialized


async def test_invalid_override():
    config_manager = ConfigManager()

    with pytest.raises(vol.Invalid):
        await config_manager.initialize({"max_workers": 0})


async def test_bad_json(tmp_path):
    config_manager = ConfigManager(write_config(tmp_path, '{"max_workers": }'))

    with pytest.raises(vol.Invalid, match="not valid JSON"):
        await config_manager.initialize()


async def test_not_an_object(tmp_path):
    config_manager = ConfigManager(write_config(tmp_path, [1, 2]))

    with pytest.raises(vol.Invalid, match="JSON object"):
        await config_manager.initialize()


async def test_missing_file(tmp_path):
    config_manager = ConfigManager(tmp_path / "absent.json")

    with pytest.raises(vol.Invalid, match="Cannot read"):
        await config_manager.initialize()


async def test_unknown_keys_are_ignored(tmp_path, caplog):
    config_manager = ConfigManager(write_config(tmp_path, {"colour": "blue", "random_seed": 5}))

    with caplog.at_level(logging.WARNING):
        await config_manager.initialize()

    assert "colour" in caplog.text
    assert config_manager.config_data.random_seed == 5


async def test_debug_data(tmp_path):
    path = write_config(tmp_path, {"random_seed": 11})
    config_manager = ConfigManager(path)

    await config_manager.initialize()

    data = config_manager.get_debug_data()

    assert data["random_seed"] == 11
    assert data["side"] == "E"
    assert data["config_path"] == path
