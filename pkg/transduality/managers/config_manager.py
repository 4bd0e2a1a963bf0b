import asyncio
import json
import logging
import os
from pathlib import Path

import voluptuous as vol

from ..common.consts import CONFIG_ENV_VARIABLE, CONFIGURATION_FILE
from ..models.config_data import DATA_KEYS, ConfigData

_LOGGER = logging.getLogger(__name__)


class ConfigManager:
    _data: dict | None
    _config_data: ConfigData
    _config_path: Path | None

    _is_initialized: bool

    def __init__(self, config_path: str | Path | None = None):
        if config_path is None:
            config_path = os.environ.get(CONFIG_ENV_VARIABLE)

        if config_path is None and Path(CONFIGURATION_FILE).is_file():
            config_path = CONFIGURATION_FILE

        self._config_path = None if config_path is None else Path(config_path)
        self._config_data = ConfigData()

        self._data = None

        self._is_initialized = False

    @property
    def is_initialized(self) -> bool:
        is_initialized = self._is_initialized

        return is_initialized

    @property
    def config_path(self) -> Path | None:
        config_path = self._config_path

        return config_path

    @property
    def config_data(self) -> ConfigData:
        config_data = self._config_data

        return config_data

    async def initialize(self, overrides: dict | None = None):
        """Defaults, then the config file, then the command line overrides."""
        self._is_initialized = False

        await self._load()

        for key, value in (overrides or {}).items():
            if value is not None:
                self._data[key] = value

        schema = ConfigData.default_schema(self._data)
        validated = schema({key: self._data[key] for key in self._data if key in DATA_KEYS})

        self._config_data.update(validated)

        _LOGGER.debug(f"Configuration loaded, Data: {self._config_data}")

        self._is_initialized = True

    def get_debug_data(self) -> dict:
        data = self._config_data.to_dict()
        data["config_path"] = None if self._config_path is None else str(self._config_path)

        return data

    async def _load(self):
        self._data = None

        await self._load_config_from_file()

        if self._data is None:
            self._data = {}

        default_configuration = self._get_defaults()

        for key in default_configuration:
            value = default_configuration[key]

            if key not in self._data:
                self._data[key] = value

    @staticmethod
    def _get_defaults() -> dict:
        data = ConfigData().to_dict()

        return data

    async def _load_config_from_file(self):
        if self._config_path is None:
            return

        try:
            text = await asyncio.to_thread(self._config_path.read_text, encoding="utf-8")
            data = json.loads(text)

        except OSError as ex:
            raise vol.Invalid(f"Cannot read configuration file '{self._config_path}': {ex.strerror}") from ex

        except json.JSONDecodeError as ex:
            raise vol.Invalid(
                f"Configuration file '{self._config_path}' is not valid JSON, Error: {ex.msg}, Line: {ex.lineno}"
            ) from ex

        if not isinstance(data, dict):
            raise vol.Invalid(f"Configuration file '{self._config_path}' must hold a JSON object")

        unknown = [key for key in data if key not in DATA_KEYS]

        if unknown:
            _LOGGER.warning(f"Ignoring unknown configuration keys: {', '.join(unknown)}")

        self._data = data
