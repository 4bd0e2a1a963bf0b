import logging

import voluptuous as vol
from voluptuous import Schema

from ..common.consts import (
    CONF_LOG_LEVEL,
    CONF_MACHINE_OUTPUT,
    CONF_MAX_WORKERS,
    CONF_RANDOM_SAMPLES,
    CONF_RANDOM_SEED,
    CONF_SIDE,
    CONF_TWISTED,
    DEFAULT_LOG_LEVEL,
    DEFAULT_MAX_WORKERS,
    DEFAULT_RANDOM_SAMPLES,
    DEFAULT_RANDOM_SEED,
)
from ..common.enums import FiberSide

LOG_LEVELS = list(logging.getLevelNamesMapping())

DATA_KEYS = [
    CONF_LOG_LEVEL,
    CONF_MACHINE_OUTPUT,
    CONF_RANDOM_SAMPLES,
    CONF_RANDOM_SEED,
    CONF_MAX_WORKERS,
    CONF_SIDE,
    CONF_TWISTED,
]


class ConfigData:
    _log_level: str
    _machine_output: bool
    _random_samples: int
    _random_seed: int
    _max_workers: int
    _side: FiberSide
    _twisted: bool

    def __init__(self):
        self._log_level = DEFAULT_LOG_LEVEL
        self._machine_output = False
        self._random_samples = DEFAULT_RANDOM_SAMPLES
        self._random_seed = DEFAULT_RANDOM_SEED
        self._max_workers = DEFAULT_MAX_WORKERS
        self._side = FiberSide.E
        self._twisted = False

    @property
    def log_level(self) -> str:
        log_level = self._log_level

        return log_level

    @property
    def machine_output(self) -> bool:
        machine_output = self._machine_output

        return machine_output

    @property
    def random_samples(self) -> int:
        random_samples = self._random_samples

        return random_samples

    @property
    def random_seed(self) -> int:
        random_seed = self._random_seed

        return random_seed

    @property
    def max_workers(self) -> int:
        max_workers = self._max_workers

        return max_workers

    @property
    def side(self) -> FiberSide:
        side = self._side

        return side

    @property
    def twisted(self) -> bool:
        twisted = self._twisted

        return twisted

    def update(self, data: dict):
        self._log_level = data.get(CONF_LOG_LEVEL, self._log_level)
        self._machine_output = data.get(CONF_MACHINE_OUTPUT, self._machine_output)
        self._random_samples = data.get(CONF_RANDOM_SAMPLES, self._random_samples)
        self._random_seed = data.get(CONF_RANDOM_SEED, self._random_seed)
        self._max_workers = data.get(CONF_MAX_WORKERS, self._max_workers)
        self._side = FiberSide(data.get(CONF_SIDE, self._side))
        self._twisted = data.get(CONF_TWISTED, self._twisted)

    def to_dict(self):
        obj = {
            CONF_LOG_LEVEL: self.log_level,
            CONF_MACHINE_OUTPUT: self.machine_output,
            CONF_RANDOM_SAMPLES: self.random_samples,
            CONF_RANDOM_SEED: self.random_seed,
            CONF_MAX_WORKERS: self.max_workers,
            CONF_SIDE: str(self.side),
            CONF_TWISTED: self.twisted,
        }

        return obj

    def __repr__(self):
        to_string = f"{self.to_dict()}"

        return to_string

    @staticmethod
    def default_schema(user_input: dict | None) -> Schema:
        if user_input is None:
            user_input = {}

        new_user_input = {
            vol.Optional(
                CONF_LOG_LEVEL, default=user_input.get(CONF_LOG_LEVEL, DEFAULT_LOG_LEVEL)
            ): vol.All(vol.Upper, vol.In(LOG_LEVELS)),
            vol.Optional(
                CONF_MACHINE_OUTPUT, default=user_input.get(CONF_MACHINE_OUTPUT, False)
            ): bool,
            vol.Optional(
                CONF_RANDOM_SAMPLES,
                default=user_input.get(CONF_RANDOM_SAMPLES, DEFAULT_RANDOM_SAMPLES),
            ): vol.All(int, vol.Range(min=1)),
            vol.Optional(
                CONF_RANDOM_SEED, default=user_input.get(CONF_RANDOM_SEED, DEFAULT_RANDOM_SEED)
            ): int,
            vol.Optional(
                CONF_MAX_WORKERS, default=user_input.get(CONF_MAX_WORKERS, DEFAULT_MAX_WORKERS)
            ): vol.All(int, vol.Range(min=1)),
            vol.Optional(
                CONF_SIDE, default=user_input.get(CONF_SIDE, str(FiberSide.E))
            ): vol.In(FiberSide.get_list()),
            vol.Optional(CONF_TWISTED, default=user_input.get(CONF_TWISTED, False)): bool,
        }

        schema = vol.Schema(new_user_input)

        return schema
