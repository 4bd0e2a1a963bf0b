"""Raw scenario data as read from a text or JSON scenario file."""
import voluptuous as vol
from voluptuous import Schema

from ..common.consts import (
    BLOCK_BASE,
    BLOCK_E,
    BLOCK_EHAT,
    BLOCK_F,
    BLOCK_H,
    BLOCK_HHAT,
    BLOCK_SCENARIO,
    BLOCK_SECTIONS,
    KEY_CONTRACTIONS,
    KEY_DESCRIPTION,
    KEY_DIFFERENTIAL,
    KEY_ELEMENTS,
    KEY_GENERATORS,
    KEY_NAME,
    KEY_PRODUCTS,
    KEY_UNIT,
    UNIT_LABEL,
    ZERO_LABEL,
)
from .exceptions import ScenarioSemanticError

DEGREE = vol.All(int, vol.Range(min=0))
GENERATOR_DEGREE = vol.All(int, vol.Range(min=1))

BASE_SCHEMA = Schema(
    {
        vol.Required(KEY_NAME): str,
        vol.Required(KEY_ELEMENTS): vol.All([vol.ExactSequence([str, DEGREE])], vol.Length(min=1)),
        vol.Optional(KEY_UNIT, default=UNIT_LABEL): str,
        vol.Optional(KEY_PRODUCTS, default=[]): [vol.ExactSequence([str, str, str])],
        vol.Optional(KEY_DIFFERENTIAL, default={}): {str: str},
        vol.Optional(KEY_CONTRACTIONS, default={}): {str: {str: str}},
    }
)

MODEL_SCHEMA = Schema(
    {
        vol.Optional(KEY_NAME): str,
        vol.Optional(KEY_GENERATORS, default=[]): [
            vol.ExactSequence([str, GENERATOR_DEGREE, str])
        ],
    }
)

SCENARIO_SCHEMA = Schema(
    {
        vol.Optional(BLOCK_SCENARIO, default={}): {
            vol.Optional(KEY_NAME): str,
            vol.Optional(KEY_DESCRIPTION): str,
        },
        vol.Required(BLOCK_BASE): BASE_SCHEMA,
        vol.Required(BLOCK_E): MODEL_SCHEMA,
        vol.Required(BLOCK_EHAT): MODEL_SCHEMA,
        vol.Optional(BLOCK_H, default=ZERO_LABEL): str,
        vol.Optional(BLOCK_HHAT, default=ZERO_LABEL): str,
        vol.Optional(BLOCK_F, default=ZERO_LABEL): str,
        vol.Optional(BLOCK_SECTIONS, default={}): {str: str},
    }
)


class ScenarioFile:
    _data: dict
    _source: str | None

    def __init__(self, data: dict, source: str | None = None):
        self._source = source

        try:
            self._data = SCENARIO_SCHEMA(data)

        except vol.Invalid as ex:
            path = "/".join(str(item) for item in ex.path)
            location = f"{source}: " if source else ""

            raise ScenarioSemanticError(f"{location}{ex.msg} at '{path}'") from ex

    @property
    def source(self) -> str | None:
        return self._source

    @property
    def data(self) -> dict:
        return self._data

    @property
    def name(self) -> str:
        scenario = self._data[BLOCK_SCENARIO]
        default = self._data[BLOCK_BASE][KEY_NAME]

        name = scenario.get(KEY_NAME, default)

        return name

    @property
    def description(self) -> str:
        return self._data[BLOCK_SCENARIO].get(KEY_DESCRIPTION, "")

    @property
    def base(self) -> dict:
        return self._data[BLOCK_BASE]

    def model(self, block: str) -> dict:
        return self._data[block]

    def expression(self, block: str) -> str:
        return self._data[block]

    @property
    def sections(self) -> dict[str, str]:
        return self._data[BLOCK_SECTIONS]

    def to_dict(self) -> dict:
        return self._data
