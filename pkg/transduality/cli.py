"""Command line entry point: ``transduality COMMAND [OPTIONS] FILES``."""
import argparse
import asyncio
import json
import logging
from pathlib import Path
import sys

import voluptuous as vol

from .common.consts import (
    CONF_LOG_LEVEL,
    CONF_MACHINE_OUTPUT,
    CONF_MAX_WORKERS,
    CONF_RANDOM_SAMPLES,
    CONF_RANDOM_SEED,
    CONF_SIDE,
    CONF_TWISTED,
    DEFAULT_NAME,
    LOG_DATE_FORMAT,
    LOG_FORMAT,
)
from .common.enums import Command, ExitCode, FiberSide, Recipe
from .managers.config_manager import ConfigManager
from .managers.coordinator import OPTION_FORM, OPTION_RECIPE, OPTION_SECTIONS, Coordinator
from .models.command_result import CommandResult

_LOGGER = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transduality", description=DEFAULT_NAME)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--machine", action="store_true", default=None, help="print a JSON report")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    common.add_argument("--log-level", dest=CONF_LOG_LEVEL)
    common.add_argument("--max-workers", dest=CONF_MAX_WORKERS, type=int)
    common.add_argument("--samples", dest=CONF_RANDOM_SAMPLES, type=int)
    common.add_argument("--seed", dest=CONF_RANDOM_SEED, type=int)

    commands = parser.add_subparsers(dest="command", required=True)

    for command in (Command.VALIDATE, Command.CHECK, Command.REPORT):
        sub = commands.add_parser(str(command), parents=[common])
        sub.add_argument("files", nargs="+")

    transform = commands.add_parser(str(Command.TRANSFORM), parents=[common])
    transform.add_argument("files", nargs=1)
    transform.add_argument("--form", required=True, help="form on E, e.g. 'psi (x) 1'")

    cohomology = commands.add_parser(str(Command.COHOMOLOGY), parents=[common])
    cohomology.add_argument("files", nargs="+")
    cohomology.add_argument("--twisted", dest=CONF_TWISTED, action="store_true", default=None)
    cohomology.add_argument("--side", dest=CONF_SIDE, choices=FiberSide.get_list())

    bracket = commands.add_parser(str(Command.BRACKET), parents=[common])
    bracket.add_argument("files", nargs=1)
    bracket.add_argument("--sections", help="file with a [sections] block")

    construct = commands.add_parser(str(Command.CONSTRUCT), parents=[common])
    construct.add_argument("recipe", choices=Recipe.get_list())
    construct.add_argument("files", nargs=1)
    construct.add_argument("--output", help="write the scenario to this file")

    return parser


def configure_logging(level: str):
    logging.basicConfig(level=level, format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT, force=True)


def render(results: list[CommandResult], machine_output: bool) -> str:
    if machine_output:
        obj = {"results": [result.to_dict() for result in results]}

        return json.dumps(obj, indent=2, sort_keys=True)

    text = "\n\n".join(result.render() for result in results)

    return text


async def run(arguments: argparse.Namespace) -> int:
    overrides = {
        key: getattr(arguments, key, None)
        for key in (
            CONF_LOG_LEVEL,
            CONF_MAX_WORKERS,
            CONF_RANDOM_SAMPLES,
            CONF_RANDOM_SEED,
            CONF_SIDE,
            CONF_TWISTED,
        )
    }
    overrides[CONF_MACHINE_OUTPUT] = arguments.machine

    if arguments.verbose:
        overrides[CONF_LOG_LEVEL] = "DEBUG"

    config_manager = ConfigManager(arguments.config)

    try:
        await config_manager.initialize(overrides)

    except vol.Invalid as ex:
        print(f"invalid configuration: {ex}", file=sys.stderr)

        return int(ExitCode.INVALID_SCENARIO)

    config_data = config_manager.config_data
    configure_logging(config_data.log_level)

    options = {
        OPTION_FORM: getattr(arguments, "form", None),
        OPTION_SECTIONS: getattr(arguments, "sections", None),
        OPTION_RECIPE: getattr(arguments, "recipe", None),
    }

    coordinator = Coordinator(config_manager)
    command = Command(arguments.command)
    results = await coordinator.run(command, list(arguments.files), options)

    output = getattr(arguments, "output", None)

    if output and command == Command.CONSTRUCT and results[0].is_success:
        Path(output).write_text(results[0].text, encoding="utf-8")

        _LOGGER.info(f"Scenario written to {output}")

    print(render(results, config_data.machine_output))

    exit_code = max(int(result.exit_code) for result in results)

    return exit_code


def main(argv: list[str] | None = None) -> int:
    arguments = build_parser().parse_args(argv)

    exit_code = asyncio.run(run(arguments))

    return exit_code
