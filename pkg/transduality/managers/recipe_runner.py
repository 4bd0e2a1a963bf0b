"""Runs builder recipes stored as JSON files.

Every recipe carries a ``base`` block (same layout as in scenario files),
its classes as base expressions and the parameters of the matching builder.
"""
from collections.abc import Sequence
from fractions import Fraction
import json
import logging
from pathlib import Path

import voluptuous as vol
from voluptuous import Schema

from ..common.consts import (
    DEFAULT_E_PREFIX,
    DEFAULT_SPHERE_DUAL_LABEL,
    RECIPE_KEY_BASE,
    RECIPE_KEY_CHERN,
    RECIPE_KEY_CHERN_HAT,
    RECIPE_KEY_DEGREE,
    RECIPE_KEY_DUAL_DEGREE,
    RECIPE_KEY_DUAL_LABEL,
    RECIPE_KEY_EULER,
    RECIPE_KEY_EULER_HAT,
    RECIPE_KEY_EXTRA_CHERN,
    RECIPE_KEY_H,
    RECIPE_KEY_H_LIST,
    RECIPE_KEY_K,
    RECIPE_KEY_LAMBDAS,
    RECIPE_KEY_NAME,
    RECIPE_KEY_RECIPE,
    RECIPE_KEY_SMALL_H,
    ZERO_LABEL,
)
from ..common.enums import Recipe
from ..models.base_algebra import BaseElement, FiniteCDGA
from ..models.duality_scenario import DualityScenario
from ..models.exceptions import ScenarioSemanticError, ScenarioSyntaxError
from ..models.scenario_file import BASE_SCHEMA
from ..models.transgressive_model import OddGenerator, TransgressiveModel
from .duality_builder import DualityBuilder
from .scenario_parser import ScenarioParser

_LOGGER = logging.getLogger(__name__)

RATIONAL = vol.Any(int, vol.All(str, vol.Match(r"^-?\d+(?:/\d+)?$")))
EXPRESSIONS = [str]

COMMON_FIELDS = {
    vol.Required(RECIPE_KEY_RECIPE): vol.In(Recipe.get_list()),
    vol.Optional(RECIPE_KEY_NAME): str,
    vol.Required(RECIPE_KEY_BASE): BASE_SCHEMA,
}

RECIPE_SCHEMAS = {
    Recipe.SPHERE: Schema(
        {
            **COMMON_FIELDS,
            vol.Required(RECIPE_KEY_EULER): str,
            vol.Required(RECIPE_KEY_DEGREE): vol.All(int, vol.Range(min=1)),
            vol.Required(RECIPE_KEY_H): str,
            vol.Required(RECIPE_KEY_EULER_HAT): str,
            vol.Optional(RECIPE_KEY_DUAL_DEGREE): vol.All(int, vol.Range(min=1)),
            vol.Optional(RECIPE_KEY_DUAL_LABEL, default=DEFAULT_SPHERE_DUAL_LABEL): str,
        }
    ),
    Recipe.FRAME_I: Schema(
        {
            **COMMON_FIELDS,
            vol.Required(RECIPE_KEY_CHERN): EXPRESSIONS,
            vol.Required(RECIPE_KEY_H): str,
            vol.Required(RECIPE_KEY_LAMBDAS): [RATIONAL],
        }
    ),
    Recipe.FRAME_II: Schema(
        {
            **COMMON_FIELDS,
            vol.Required(RECIPE_KEY_CHERN): EXPRESSIONS,
            vol.Optional(RECIPE_KEY_EXTRA_CHERN, default=[]): EXPRESSIONS,
            vol.Required(RECIPE_KEY_H): str,
            vol.Required(RECIPE_KEY_LAMBDAS): [RATIONAL],
        }
    ),
    Recipe.RELATION: Schema(
        {
            **COMMON_FIELDS,
            vol.Required(RECIPE_KEY_CHERN): EXPRESSIONS,
            vol.Required(RECIPE_KEY_CHERN_HAT): EXPRESSIONS,
            vol.Required(RECIPE_KEY_K): vol.All(int, vol.Range(min=1)),
            vol.Required(RECIPE_KEY_LAMBDAS): [RATIONAL],
            vol.Optional(RECIPE_KEY_SMALL_H, default=ZERO_LABEL): str,
        }
    ),
    Recipe.MULTIDEGREE: Schema(
        {
            **COMMON_FIELDS,
            vol.Required(RECIPE_KEY_CHERN): EXPRESSIONS,
            vol.Required(RECIPE_KEY_CHERN_HAT): EXPRESSIONS,
            vol.Required(RECIPE_KEY_K): vol.All(int, vol.Range(min=1)),
            vol.Required(RECIPE_KEY_H_LIST): EXPRESSIONS,
        }
    ),
}


class RecipeRunner:
    _parser: ScenarioParser
    _builder: DualityBuilder

    def __init__(self, parser: ScenarioParser | None = None, builder: DualityBuilder | None = None):
        self._parser = parser or ScenarioParser()
        self._builder = builder or DualityBuilder()

    def validate(self, data: dict, source: str | None = None) -> dict:
        location = f"{source}: " if source else ""
        recipe = data.get(RECIPE_KEY_RECIPE) if isinstance(data, dict) else None

        if recipe not in Recipe.get_list():
            raise ScenarioSemanticError(
                f"{location}Unknown recipe '{recipe}', expected one of {', '.join(Recipe.get_list())}"
            )

        try:
            validated = RECIPE_SCHEMAS[Recipe(recipe)](data)

        except vol.Invalid as ex:
            path = "/".join(str(item) for item in ex.path)

            raise ScenarioSemanticError(f"{location}{ex.msg} at '{path}'") from ex

        return validated

    def load(self, path: str | Path) -> dict:
        path = Path(path)

        try:
            data = json.loads(path.read_text(encoding="utf-8"))

        except OSError as ex:
            raise ScenarioSemanticError(f"Cannot read '{path}': {ex.strerror}") from ex

        except json.JSONDecodeError as ex:
            raise ScenarioSyntaxError(ex.msg, ex.lineno, ex.colno, str(path)) from ex

        return self.validate(data, str(path))

    def _classes(self, base: FiniteCDGA, expressions: Sequence[str]) -> list[BaseElement]:
        classes = [self._parser.parse_base_expression(base, expression) for expression in expressions]

        return classes

    @staticmethod
    def _lambdas(values: Sequence[int | str]) -> list[Fraction]:
        return [Fraction(value) for value in values]

    def run(self, data: dict) -> DualityScenario:
        """Calls the builder matching the recipe with the parsed classes."""
        recipe = Recipe(data[RECIPE_KEY_RECIPE])
        base = self._parser.build_base(data[RECIPE_KEY_BASE])
        name = data.get(RECIPE_KEY_NAME, f"{base.name}-{recipe}")
        builder = self._builder

        _LOGGER.info(f"Running recipe '{recipe}' on '{base.name}'")

        if recipe == Recipe.SPHERE:
            euler = self._parser.parse_base_expression(base, data[RECIPE_KEY_EULER])
            model = TransgressiveModel(
                base, [OddGenerator(DEFAULT_E_PREFIX, data[RECIPE_KEY_DEGREE], euler)], f"{base.name}:E"
            )
            h = self._parser.parse_element(model, data[RECIPE_KEY_H])

            scenario = builder.construct_sphere_dual(
                h,
                self._parser.parse_base_expression(base, data[RECIPE_KEY_EULER_HAT]),
                data.get(RECIPE_KEY_DUAL_DEGREE),
                data[RECIPE_KEY_DUAL_LABEL],
                name,
            )

        elif recipe in (Recipe.FRAME_I, Recipe.FRAME_II):
            chern = self._classes(base, data[RECIPE_KEY_CHERN])
            model = TransgressiveModel.partial_frame(
                base, chern, len(chern), DEFAULT_E_PREFIX, f"{base.name}:E"
            )
            h = self._parser.parse_element(model, data[RECIPE_KEY_H])
            lambdas = self._lambdas(data[RECIPE_KEY_LAMBDAS])

            if recipe == Recipe.FRAME_I:
                scenario = builder.construct_frame_dual_one(h, lambdas, name)

            else:
                extra = self._classes(base, data[RECIPE_KEY_EXTRA_CHERN])
                scenario = builder.construct_frame_dual_two(h, extra, len(extra), lambdas, name)

        elif recipe == Recipe.RELATION:
            scenario = builder.construct_relation_dual(
                self._classes(base, data[RECIPE_KEY_CHERN]),
                self._classes(base, data[RECIPE_KEY_CHERN_HAT]),
                data[RECIPE_KEY_K],
                self._lambdas(data[RECIPE_KEY_LAMBDAS]),
                self._parser.parse_base_expression(base, data[RECIPE_KEY_SMALL_H]),
                name,
            )

        else:
            scenario = builder.construct_multidegree_dual(
                self._classes(base, data[RECIPE_KEY_CHERN]),
                self._classes(base, data[RECIPE_KEY_CHERN_HAT]),
                data[RECIPE_KEY_K],
                self._classes(base, data[RECIPE_KEY_H_LIST]),
                name,
            )

        return scenario

    def run_file(self, path: str | Path) -> DualityScenario:
        return self.run(self.load(path))
