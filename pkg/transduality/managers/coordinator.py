import asyncio
from itertools import product
import logging
import random
import sys

import voluptuous as vol

from ..common.consts import DOMAIN
from ..common.enums import Command, ExitCode, FiberSide, Recipe
from ..models.clifford import CliffordSection
from ..models.command_result import CommandResult
from ..models.duality_scenario import DualityScenario
from ..models.exceptions import (
    InvalidGeneratorError,
    ScenarioSemanticError,
    SingularMatrixError,
    TransdualityError,
)
from ..models.tc_element import TCElement
from ..models.transgressive_model import TransgressiveModel
from .axiom_checker import validate_scenario
from .cohomology_calculator import CohomologyCalculator
from .config_manager import ConfigManager
from .courant_calculator import CourantCalculator, SectionTransformer
from .duality_checker import DualityChecker
from .recipe_runner import RecipeRunner
from .scenario_parser import ScenarioParser

_LOGGER = logging.getLogger(__name__)

OPTION_FORM = "form"
OPTION_SECTIONS = "sections"
OPTION_RECIPE = "recipe"


class Coordinator:
    """Runs one command over a batch of input files, bounded by max_workers."""

    _config_manager: ConfigManager
    _parser: ScenarioParser
    _recipes: RecipeRunner
    _calculator: CohomologyCalculator

    def __init__(self, config_manager: ConfigManager):
        self._config_manager = config_manager
        self._parser = ScenarioParser()
        self._recipes = RecipeRunner(self._parser)
        self._calculator = CohomologyCalculator()

    @property
    def config_manager(self) -> ConfigManager:
        config_manager = self._config_manager

        return config_manager

    @property
    def parser(self) -> ScenarioParser:
        parser = self._parser

        return parser

    async def run(self, command: Command, inputs: list[str], options: dict | None = None) -> list[CommandResult]:
        options = options or {}
        semaphore = asyncio.Semaphore(self._config_manager.config_data.max_workers)

        _LOGGER.info(f"Start running {DOMAIN} {command} on {len(inputs)} input(s)")

        async def run_guarded(path: str) -> CommandResult:
            async with semaphore:
                result = await asyncio.to_thread(self.execute, command, path, options)

            return result

        results = await asyncio.gather(*[run_guarded(path) for path in inputs])

        _LOGGER.info(f"Finished running {command}")

        return list(results)

    def execute(self, command: Command, path: str, options: dict) -> CommandResult:
        handlers = {
            Command.VALIDATE: self._validate,
            Command.CHECK: self._check,
            Command.TRANSFORM: self._transform,
            Command.COHOMOLOGY: self._cohomology,
            Command.BRACKET: self._bracket,
            Command.CONSTRUCT: self._construct,
            Command.REPORT: self._report,
        }

        try:
            result = handlers[command](path, options)

        except TransdualityError as ex:
            _LOGGER.warning(f"Failed to run {command} on {path}, Error: {ex}")

            result = CommandResult(command, path, ex.exit_code, f"error: {ex}", {"error": str(ex)})

        except vol.Invalid as ex:
            _LOGGER.warning(f"Invalid input for {command} on {path}, Error: {ex}")

            result = CommandResult(command, path, ExitCode.INVALID_SCENARIO, f"error: {ex}", {"error": str(ex)})

        except Exception as ex:
            exc_type, exc_obj, tb = sys.exc_info()
            line_number = tb.tb_lineno

            _LOGGER.error(f"Failed to run {command} on {path}, Error: {ex}, Line: {line_number}")

            result = CommandResult(
                command, path, ExitCode.INVALID_SCENARIO, f"unexpected error: {ex}", {"error": str(ex)}
            )

        return result

    def _load(self, path: str) -> DualityScenario:
        _LOGGER.info(f"Loading scenario {path}")

        scenario = self._parser.load(path)

        return scenario

    def _load_valid(self, path: str) -> DualityScenario:
        scenario = self._load(path)
        report = validate_scenario(scenario)

        if not report.is_valid:
            raise ScenarioSemanticError(report.render())

        return scenario

    def _validate(self, path: str, options: dict) -> CommandResult:
        scenario = self._load(path)
        report = validate_scenario(scenario)
        exit_code = ExitCode.SUCCESS if report.is_valid else ExitCode.INVALID_SCENARIO

        result = CommandResult(Command.VALIDATE, path, exit_code, report.render(), {"validation": report.to_dict()})

        return result

    def _check(self, path: str, options: dict) -> CommandResult:
        scenario = self._load(path)
        report = validate_scenario(scenario)

        if not report.is_valid:
            return CommandResult(
                Command.CHECK, path, ExitCode.INVALID_SCENARIO, report.render(), {"validation": report.to_dict()}
            )

        verdict = DualityChecker(scenario).verdict()
        lines = [verdict.render()]

        if verdict.nondegeneracy is not None and verdict.nondegeneracy.matrix is not None:
            lines.append("nondegeneracy matrix:")
            lines.extend(
                "  " + " ".join(str(value) for value in row)
                for row in verdict.nondegeneracy.matrix.to_lists()
            )

        exit_code = ExitCode.SUCCESS if verdict.is_dual else ExitCode.NOT_DUAL

        result = CommandResult(Command.CHECK, path, exit_code, "\n".join(lines), {"verdict": verdict.to_dict()})

        return result

    def _transform(self, path: str, options: dict) -> CommandResult:
        scenario = self._load_valid(path)
        text = options.get(OPTION_FORM)

        if not text:
            raise ScenarioSemanticError("transform needs a form to transform")

        element = self._parser.parse_element(scenario.e, text)
        image = DualityChecker(scenario).tau_transform(element)

        data = {"form": element.render(), "image": image.render(), "terms": image.to_dict()}
        result = CommandResult(Command.TRANSFORM, path, ExitCode.SUCCESS, f"tau({element.render()}) = {image.render()}", data)

        return result

    def _cohomology(self, path: str, options: dict) -> CommandResult:
        scenario = self._load_valid(path)
        config_data = self._config_manager.config_data
        model = scenario.model(config_data.side)

        if config_data.twisted:
            table = self._calculator.twisted_cohomology_dims(model, scenario.twist(config_data.side))

        else:
            table = self._calculator.cohomology_dims(model)

        result = CommandResult(
            Command.COHOMOLOGY,
            path,
            ExitCode.SUCCESS,
            table.render(with_representatives=config_data.twisted),
            {"cohomology": table.to_dict()},
        )

        return result

    def _sections(self, scenario: DualityScenario, options: dict) -> dict[str, CliffordSection]:
        sections_path = options.get(OPTION_SECTIONS)

        if sections_path:
            sections = self._parser.load_sections(scenario.e, sections_path)

        else:
            sections = scenario.sections

        if not sections:
            raise ScenarioSemanticError(f"'{scenario.name}' has no sections to bracket")

        return sections

    def _bracket_data(self, scenario: DualityScenario, sections: dict[str, CliffordSection]) -> tuple[list[str], dict, bool]:
        calculator = CourantCalculator(scenario.e, scenario.h)
        lines = []
        brackets = {}

        for (first_name, first), (second_name, second) in product(sections.items(), repeat=2):
            bracket = calculator.derived_bracket(first, second)
            key = f"[{first_name}, {second_name}]"
            brackets[key] = bracket.render()
            lines.append(f"{key} = {bracket.render()}")

        data = {"brackets": brackets}
        preserved = True

        try:
            transformer = SectionTransformer(scenario)
            images = {}

            for name, section in sections.items():
                image = transformer.tduality_section_map(section)
                images[name] = image.render()
                lines.append(f"T({name}) = {image.render()}")

            for (first_name, first), (second_name, second) in product(sections.items(), repeat=2):
                if not transformer.preserves_bracket(first, second):
                    preserved = False
                    lines.append(f"bracket [{first_name}, {second_name}] is not preserved")

            data["images"] = images

        except SingularMatrixError as ex:
            preserved = False
            lines.append(f"no section map: {ex}")

        data["brackets_preserved"] = preserved
        lines.append(f"brackets preserved: {'yes' if preserved else 'no'}")

        return lines, data, preserved

    def _bracket(self, path: str, options: dict) -> CommandResult:
        scenario = self._load_valid(path)
        sections = self._sections(scenario, options)

        lines, data, preserved = self._bracket_data(scenario, sections)
        exit_code = ExitCode.SUCCESS if preserved else ExitCode.NOT_DUAL

        result = CommandResult(Command.BRACKET, path, exit_code, "\n".join(lines), data)

        return result

    def _construct(self, path: str, options: dict) -> CommandResult:
        recipe_data = self._recipes.load(path)
        expected = options.get(OPTION_RECIPE)

        if expected is not None and Recipe(expected) != Recipe(recipe_data["recipe"]):
            raise ScenarioSemanticError(
                f"'{path}' holds a '{recipe_data['recipe']}' recipe, not '{expected}'"
            )

        scenario = self._recipes.run(recipe_data)
        text = self._parser.render(scenario)

        result = CommandResult(Command.CONSTRUCT, path, ExitCode.SUCCESS, text, {"scenario_text": text})

        return result

    def _sample_twisted_square(self, model: TransgressiveModel, twist: TCElement) -> int:
        """Random elements whose twisted differential does not square to zero."""
        config_data = self._config_manager.config_data
        generator = random.Random(config_data.random_seed)
        basis = model.basis()
        failures = 0

        for _ in range(config_data.random_samples):
            terms = {
                generator.choice(basis): generator.randint(-3, 3)
                for _ in range(generator.randint(1, 4))
            }
            element = model.element(terms)

            square = model.twisted_differential(twist, model.twisted_differential(twist, element))

            if not square.is_zero:
                failures += 1

        return failures

    def _report(self, path: str, options: dict) -> CommandResult:
        scenario = self._load(path)
        report = validate_scenario(scenario)
        lines = [f"scenario: {scenario.name}", report.render()]
        data = {"validation": report.to_dict()}

        if not report.is_valid:
            return CommandResult(Command.REPORT, path, ExitCode.INVALID_SCENARIO, "\n".join(lines), data)

        checker = DualityChecker(scenario)
        verdict = checker.verdict()
        lines.append(verdict.render())
        data["verdict"] = verdict.to_dict()

        failures = {
            str(side): self._sample_twisted_square(scenario.model(side), scenario.twist(side))
            for side in FiberSide
        }
        data["twisted_square_failures"] = failures
        lines.append(f"random d^H squares: {failures}")

        is_dual = verdict.is_dual

        if verdict.gerbe.holds:
            chain_map = checker.verify_chain_map()
            data["chain_map"] = chain_map.to_dict()
            lines.append(f"chain map: {'yes' if chain_map.is_chain_map else 'no'}")

            invertible = checker.is_tau_invertible()
            data["transform_invertible"] = invertible
            lines.append(f"transform invertible: {'yes' if invertible else 'no'}")

            comparison = self._calculator.compare_duals(scenario, checker)
            data["twisted_cohomology"] = comparison.to_dict()
            lines.append(comparison.render())

            is_dual = is_dual and chain_map.is_chain_map and invertible

        try:
            degree = checker.check_dual_sphere_degree()
            data["sphere_degree"] = degree.to_dict()
            lines.append(
                f"dual sphere degree: expected {degree.expected}, "
                f"observed {'none' if degree.is_vacuous else degree.observed}"
            )

        except InvalidGeneratorError:
            pass

        if scenario.e.size == 1:
            decomposition = CourantCalculator(scenario.e, scenario.h).sphere_algebroid_decomposition()
            data["algebroid"] = decomposition.to_dict()
            lines.append("algebroid summands:")
            lines.append(decomposition.render())

        if scenario.sections:
            bracket_lines, bracket_data, preserved = self._bracket_data(scenario, scenario.sections)
            data["sections"] = bracket_data
            lines.extend(bracket_lines)

            is_dual = is_dual and preserved

        exit_code = ExitCode.SUCCESS if is_dual else ExitCode.NOT_DUAL

        result = CommandResult(Command.REPORT, path, exit_code, "\n".join(lines), data)

        return result
