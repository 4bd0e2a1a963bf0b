"""Reader and writer of the line oriented scenario format (and its JSON twin).

A scenario file is a sequence of ``[block]`` sections::

    [base]
    name = s4
    elements = 1:0, u:4
    product u*u = 0

    [E]
    generator psi:3 = u

    [F]
    psi^phat (x) 1

Terms read ``[q *] g1^g2 (x) b``; a missing tensor factor means the unit.
"""
from collections.abc import Iterable
from fractions import Fraction
import json
import logging
from pathlib import Path

import pyparsing as pp

from ..common.consts import (
    BLOCK_BASE,
    BLOCK_E,
    BLOCK_EHAT,
    BLOCK_F,
    BLOCK_H,
    BLOCK_HHAT,
    BLOCK_SCENARIO,
    BLOCK_SECTIONS,
    DERIVATIVE_PREFIX,
    EXPRESSION_BLOCKS,
    IDENTITY_WORD,
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
from ..models.base_algebra import BaseElement, FiniteCDGA
from ..models.clifford import CliffordElement, CliffordSection
from ..models.duality_scenario import DualityScenario
from ..models.exceptions import (
    ScenarioSemanticError,
    ScenarioSyntaxError,
    TransdualityError,
)
from ..models.scenario_file import ScenarioFile
from ..models.tc_element import TCElement
from ..models.transgressive_model import OddGenerator, TransgressiveModel

_LOGGER = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

NUMBER = pp.Regex(r"\d+(?:/\d+)?").set_name("number")
INTEGER = pp.Regex(r"\d+").set_name("integer")
LABEL = pp.Regex(r"[A-Za-z0-9_][A-Za-z0-9_.']*").set_name("label")
SIGN = pp.one_of("+ -").set_name("sign")
STAR = pp.Suppress("*")
TENSOR = pp.Suppress("(x)")
EQUALS = pp.Suppress("=")
COLON = pp.Suppress(":")

MONOMIAL = pp.Group(pp.DelimitedList(LABEL, delim="^"))
TERM = pp.Group(
    pp.Optional(NUMBER("coefficient") + STAR)
    + MONOMIAL("factors")
    + pp.Optional(TENSOR + LABEL("base"))
)
EXPRESSION = pp.Optional(SIGN, default="+") + TERM + pp.ZeroOrMore(SIGN + TERM)

VECTOR_TERM = pp.Group(pp.Optional(NUMBER("coefficient") + STAR) + LABEL("name"))
VECTOR = pp.Group(pp.Optional(SIGN, default="+") + VECTOR_TERM + pp.ZeroOrMore(SIGN + VECTOR_TERM))

MATRIX_UNIT = pp.Group(
    pp.Suppress("[") + MONOMIAL("row") + pp.Suppress("|") + MONOMIAL("column") + pp.Suppress("]")
)
CLIFFORD_TERM = pp.Group(
    pp.Optional(NUMBER("coefficient") + STAR)
    + (MATRIX_UNIT("unit") | MONOMIAL("word"))
    + pp.Optional(TENSOR + LABEL("base"))
)
CLIFFORD = pp.Group(
    pp.Optional(SIGN, default="+") + CLIFFORD_TERM + pp.ZeroOrMore(SIGN + CLIFFORD_TERM)
)
SECTION = (
    pp.Optional(pp.Suppress(pp.Literal("X") + ":") + VECTOR("vector"))
    + pp.Optional(pp.Suppress(";"))
    + pp.Optional(pp.Suppress(pp.Literal("C") + ":") + CLIFFORD("clifford"))
)

EXPRESSION_TEXT = pp.original_text_for(EXPRESSION)
ELEMENT = pp.Group(LABEL("label") + COLON + INTEGER("degree"))

NAME_LINE = pp.Keyword("name")("kind") + EQUALS + pp.Regex(r".+")("value")
DESCRIPTION_LINE = pp.Keyword("description")("kind") + EQUALS + pp.Regex(r".+")("value")
ELEMENTS_LINE = (
    pp.Keyword("elements")("kind")
    + EQUALS
    + pp.Group(pp.OneOrMore(ELEMENT + pp.Optional(pp.Suppress(","))))("elements")
)
UNIT_LINE = pp.Keyword("unit")("kind") + EQUALS + LABEL("value")
PRODUCT_LINE = (
    pp.Keyword("product")("kind") + LABEL("left") + STAR + LABEL("right") + EQUALS + EXPRESSION_TEXT("value")
)
DIFFERENTIAL_LINE = pp.Keyword("d")("kind") + LABEL("label") + EQUALS + EXPRESSION_TEXT("value")
CONTRACTION_LINE = (
    pp.Keyword("contraction")("kind")
    + LABEL("name")
    + pp.Optional(COLON + LABEL("label") + EQUALS + EXPRESSION_TEXT("value"))
)
GENERATOR_LINE = (
    pp.Keyword("generator")("kind")
    + LABEL("label")
    + COLON
    + INTEGER("degree")
    + pp.Optional(EQUALS + EXPRESSION_TEXT("value"))
)
SECTION_LINE = LABEL("name") + EQUALS + pp.original_text_for(SECTION)("value")

BLOCK_GRAMMARS = {
    BLOCK_SCENARIO: NAME_LINE | DESCRIPTION_LINE,
    BLOCK_BASE: NAME_LINE | ELEMENTS_LINE | UNIT_LINE | PRODUCT_LINE | DIFFERENTIAL_LINE | CONTRACTION_LINE,
    BLOCK_E: NAME_LINE | GENERATOR_LINE,
    BLOCK_EHAT: NAME_LINE | GENERATOR_LINE,
    BLOCK_SECTIONS: SECTION_LINE,
}

BLOCKS = [
    BLOCK_SCENARIO,
    BLOCK_BASE,
    BLOCK_E,
    BLOCK_EHAT,
    BLOCK_H,
    BLOCK_HHAT,
    BLOCK_F,
    BLOCK_SECTIONS,
]


def _signed_terms(tokens: pp.ParseResults) -> Iterable[tuple[int, pp.ParseResults]]:
    items = list(tokens)

    for position in range(0, len(items), 2):
        sign = -1 if items[position] == "-" else 1

        yield sign, items[position + 1]


def _coefficient(term: pp.ParseResults, sign: int) -> Fraction:
    value = Fraction(term.get("coefficient", "1")) * sign

    return value


class ScenarioParser:
    def parse_expression_tokens(self, grammar: pp.ParserElement, text: str, line: int = 1) -> pp.ParseResults:
        try:
            tokens = grammar.parse_string(text, parse_all=True)

        except pp.ParseException as ex:
            raise ScenarioSyntaxError(ex.msg, line + ex.lineno - 1, ex.col) from ex

        return tokens

    def parse_linear_combination(self, text: str) -> dict[str, Fraction]:
        """Base expression as label -> coefficient, before any algebra exists."""
        tokens = self.parse_expression_tokens(EXPRESSION, text)
        result: dict[str, Fraction] = {}

        for sign, term in _signed_terms(tokens):
            factors = list(term["factors"])

            if len(factors) != 1 or "base" in term:
                raise ScenarioSemanticError(f"'{text}' is not a combination of basis labels")

            label = factors[0]

            if label == ZERO_LABEL:
                continue

            result[label] = result.get(label, Fraction(0)) + _coefficient(term, sign)

        return result

    def parse_base_expression(self, algebra: FiniteCDGA, text: str) -> BaseElement:
        try:
            element = algebra.element(self.parse_linear_combination(text))

        except TransdualityError as ex:
            if isinstance(ex, (ScenarioSyntaxError, ScenarioSemanticError)):
                raise

            raise ScenarioSemanticError(f"Invalid base expression '{text}': {ex}") from ex

        return element

    def parse_element(self, model: TransgressiveModel, text: str) -> TCElement:
        tokens = self.parse_expression_tokens(EXPRESSION, text)
        base = model.base
        result = model.zero()

        for sign, term in _signed_terms(tokens):
            factors = list(term["factors"])
            coefficient = _coefficient(term, sign)
            base_label = term.get("base")

            if factors == [ZERO_LABEL] and base_label is None:
                continue

            if base_label is None and len(factors) == 1 and not model.has_generator(factors[0]):
                base_label = factors[0]
                factors = []

            if factors == [IDENTITY_WORD]:
                factors = []

            base_label = base_label or base.unit_label

            if base_label == ZERO_LABEL:
                continue

            unknown = [label for label in factors if not model.has_generator(label)]

            if unknown:
                raise ScenarioSemanticError(
                    f"Unknown generator '{unknown[0]}' in '{text}' for '{model.name}'"
                )

            if base_label not in base.labels:
                raise ScenarioSemanticError(f"Unknown basis label '{base_label}' in '{text}'")

            mask, monomial_sign = model.mask_of(factors)

            if not monomial_sign:
                continue

            result = result + model.element(
                {(mask, base.index_of(base_label)): coefficient * monomial_sign}
            )

        return result

    def _clifford_factor(self, model: TransgressiveModel, label: str) -> CliffordElement:
        if label == IDENTITY_WORD:
            return CliffordElement.identity(model)

        if model.has_generator(label):
            return CliffordElement.exterior(model, label)

        if label.startswith(DERIVATIVE_PREFIX) and model.has_generator(label[len(DERIVATIVE_PREFIX):]):
            return CliffordElement.derivative(model, label[len(DERIVATIVE_PREFIX):])

        raise ScenarioSemanticError(f"Unknown Clifford factor '{label}' for '{model.name}'")

    def parse_section(self, model: TransgressiveModel, text: str) -> CliffordSection:
        tokens = self.parse_expression_tokens(SECTION, text)
        base = model.base
        vector: dict[str, Fraction] = {}
        clifford = CliffordElement(model)

        if "vector" in tokens:
            for sign, term in _signed_terms(tokens["vector"]):
                name = term["name"]

                if name == ZERO_LABEL:
                    continue

                vector[name] = vector.get(name, Fraction(0)) + _coefficient(term, sign)

        if "clifford" in tokens:
            for sign, term in _signed_terms(tokens["clifford"]):
                coefficient = _coefficient(term, sign)
                base_label = term.get("base", base.unit_label)

                if base_label not in base.labels:
                    raise ScenarioSemanticError(f"Unknown basis label '{base_label}' in '{text}'")

                beta = base.basis_element(base.index_of(base_label))

                if "unit" in term:
                    row = [label for label in term["unit"]["row"] if label != IDENTITY_WORD]
                    column = [label for label in term["unit"]["column"] if label != IDENTITY_WORD]

                    row_mask, row_sign = model.mask_of(row)
                    column_mask, column_sign = model.mask_of(column)

                    element = CliffordElement.matrix_unit(model, row_mask, column_mask, beta)
                    clifford = clifford + element.scale(coefficient * row_sign * column_sign)

                    continue

                word = list(term["word"])

                if word == [ZERO_LABEL]:
                    continue

                element = CliffordElement.identity(model)

                for label in word:
                    element = element.compose(self._clifford_factor(model, label))

                element = element.compose(CliffordElement.left_multiplication(model, beta))
                clifford = clifford + element.scale(coefficient)

        try:
            section = CliffordSection(model, vector, clifford)

        except TransdualityError as ex:
            raise ScenarioSemanticError(f"Invalid section '{text}': {ex}") from ex

        return section

    def read_text(self, text: str, source: str | None = None) -> dict:
        """Turns the block format into the raw scenario dictionary."""
        data: dict = {block: {} for block in (BLOCK_SCENARIO, BLOCK_SECTIONS)}
        expressions: dict[str, list[str]] = {block: [] for block in EXPRESSION_BLOCKS}
        block = None

        for number, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.split("#", 1)[0].strip()

            if not line:
                continue

            if line.startswith("[") and line.endswith("]") and line[1:-1].strip() in BLOCKS:
                block = line[1:-1].strip()
                data.setdefault(block, {})

                continue

            if block is None:
                raise ScenarioSyntaxError("Content outside of a block", number, 1, source)

            column_offset = raw_line.index(line[0])

            try:
                if block in EXPRESSION_BLOCKS:
                    EXPRESSION.parse_string(line, parse_all=True)
                    self._append_expression(expressions[block], line)

                    continue

                tokens = BLOCK_GRAMMARS[block].parse_string(line, parse_all=True)

            except pp.ParseException as ex:
                raise ScenarioSyntaxError(ex.msg, number, column_offset + ex.col, source) from ex

            self._store_line(data, block, tokens)

        for block_name, lines in expressions.items():
            if lines:
                data[block_name] = " ".join(lines)

        for block_name in (BLOCK_H, BLOCK_HHAT, BLOCK_F):
            if isinstance(data.get(block_name), dict):
                data.pop(block_name)

        return data

    @staticmethod
    def _append_expression(lines: list[str], line: str):
        if lines and line[0] not in "+-":
            line = f"+ {line}"

        lines.append(line)

    @staticmethod
    def _store_line(data: dict, block: str, tokens: pp.ParseResults):
        target = data[block]

        if block == BLOCK_SECTIONS:
            target[tokens["name"]] = tokens["value"]

            return

        kind = tokens["kind"]

        if kind in (KEY_NAME, KEY_DESCRIPTION):
            target[kind] = tokens["value"].strip()

        elif kind == KEY_ELEMENTS:
            target[KEY_ELEMENTS] = [
                [element["label"], int(element["degree"])] for element in tokens["elements"]
            ]

        elif kind == KEY_UNIT:
            target[KEY_UNIT] = tokens["value"]

        elif kind == "product":
            target.setdefault(KEY_PRODUCTS, []).append(
                [tokens["left"], tokens["right"], tokens["value"]]
            )

        elif kind == "d":
            target.setdefault(KEY_DIFFERENTIAL, {})[tokens["label"]] = tokens["value"]

        elif kind == "contraction":
            table = target.setdefault(KEY_CONTRACTIONS, {}).setdefault(tokens["name"], {})

            if "label" in tokens:
                table[tokens["label"]] = tokens["value"]

        elif kind == "generator":
            target.setdefault(KEY_GENERATORS, []).append(
                [tokens["label"], int(tokens["degree"]), tokens.get("value", ZERO_LABEL)]
            )

    def read(self, text: str, source: str | None = None) -> ScenarioFile:
        if text.lstrip().startswith("{"):
            try:
                data = json.loads(text)

            except json.JSONDecodeError as ex:
                raise ScenarioSyntaxError(ex.msg, ex.lineno, ex.colno, source) from ex

        else:
            data = self.read_text(text, source)

        scenario_file = ScenarioFile(data, source)

        return scenario_file

    def build_base(self, data: dict) -> FiniteCDGA:
        products = {}

        for left, right, expression in data[KEY_PRODUCTS]:
            products[(left, right)] = self.parse_linear_combination(expression)

        differential = {
            label: self.parse_linear_combination(expression)
            for label, expression in data[KEY_DIFFERENTIAL].items()
        }

        contractions = {
            name: {
                label: self.parse_linear_combination(expression)
                for label, expression in table.items()
            }
            for name, table in data[KEY_CONTRACTIONS].items()
        }

        algebra = FiniteCDGA(
            data[KEY_NAME],
            [(label, degree) for label, degree in data[KEY_ELEMENTS]],
            data[KEY_UNIT],
            products,
            differential,
            contractions,
        )

        return algebra

    def build_model(self, base: FiniteCDGA, data: dict, default_name: str) -> TransgressiveModel:
        generators = [
            OddGenerator(label, degree, self.parse_base_expression(base, expression))
            for label, degree, expression in data[KEY_GENERATORS]
        ]

        model = TransgressiveModel(base, generators, data.get(KEY_NAME, default_name))

        return model

    def build(self, scenario_file: ScenarioFile) -> DualityScenario:
        source = scenario_file.source or scenario_file.name

        try:
            base = self.build_base(scenario_file.base)
            e_model = self.build_model(base, scenario_file.model(BLOCK_E), f"{base.name}:E")
            e_hat_model = self.build_model(base, scenario_file.model(BLOCK_EHAT), f"{base.name}:Ehat")
            correspondence = TransgressiveModel.make_correspondence(e_model, e_hat_model)

            h = self.parse_element(e_model, scenario_file.expression(BLOCK_H))
            h_hat = self.parse_element(e_hat_model, scenario_file.expression(BLOCK_HHAT))
            kernel = self.parse_element(correspondence, scenario_file.expression(BLOCK_F))

            sections = {
                name: self.parse_section(e_model, text)
                for name, text in scenario_file.sections.items()
            }

            scenario = DualityScenario(
                h, h_hat, kernel, scenario_file.name, scenario_file.description, sections
            )

        except (ScenarioSyntaxError, ScenarioSemanticError):
            raise

        except TransdualityError as ex:
            raise ScenarioSemanticError(f"{source}: {ex}") from ex

        _LOGGER.info(f"Loaded scenario '{scenario.name}' from {source}")

        return scenario

    def parse(self, text: str, source: str | None = None) -> DualityScenario:
        return self.build(self.read(text, source))

    def load(self, path: str | Path) -> DualityScenario:
        path = Path(path)

        try:
            text = path.read_text(encoding="utf-8")

        except OSError as ex:
            raise ScenarioSemanticError(f"Cannot read '{path}': {ex.strerror}") from ex

        return self.parse(text, str(path))

    def load_sections(self, model: TransgressiveModel, path: str | Path) -> dict[str, CliffordSection]:
        """Sections from a file holding a single [sections] block."""
        path = Path(path)
        text = path.read_text(encoding="utf-8")

        if not text.lstrip().startswith("["):
            text = f"[{BLOCK_SECTIONS}]\n{text}"

        data = self.read_text(text, str(path))

        sections = {
            name: self.parse_section(model, value)
            for name, value in data.get(BLOCK_SECTIONS, {}).items()
        }

        return sections

    def render_base(self, algebra: FiniteCDGA) -> list[str]:
        lines = [f"[{BLOCK_BASE}]", f"name = {algebra.name}"]

        elements = ", ".join(
            f"{label}:{degree}" for label, degree in zip(algebra.labels, algebra.degrees)
        )
        lines.append(f"elements = {elements}")

        if algebra.unit_label != UNIT_LABEL:
            lines.append(f"unit = {algebra.unit_label}")

        unit = algebra.unit_index

        for left in range(algebra.dimension):
            for right in range(left, algebra.dimension):
                if unit in (left, right):
                    continue

                product = BaseElement(algebra, algebra.basis_product(left, right))

                if not product.is_zero:
                    lines.append(
                        f"product {algebra.label(left)}*{algebra.label(right)} = {product.render()}"
                    )

        for index in range(algebra.dimension):
            image = BaseElement(algebra, algebra.basis_differential(index))

            if not image.is_zero:
                lines.append(f"d {algebra.label(index)} = {image.render()}")

        for name in algebra.contraction_names:
            entries = [
                (index, BaseElement(algebra, algebra.basis_contraction(name, index)))
                for index in range(algebra.dimension)
            ]
            entries = [(index, image) for index, image in entries if not image.is_zero]

            if not entries:
                lines.append(f"contraction {name}")

            for index, image in entries:
                lines.append(f"contraction {name}: {algebra.label(index)} = {image.render()}")

        return lines

    @staticmethod
    def render_model(block: str, model: TransgressiveModel) -> list[str]:
        lines = [f"[{block}]", f"name = {model.name}"]

        for generator in model.generators:
            lines.append(
                f"generator {generator.label}:{generator.degree} = {generator.transgression.render()}"
            )

        return lines

    def render(self, scenario: DualityScenario) -> str:
        """Canonical text form; reading it back yields an equal scenario."""
        lines = [f"[{BLOCK_SCENARIO}]", f"name = {scenario.name}"]

        if scenario.description:
            lines.append(f"description = {scenario.description}")

        blocks = [
            lines,
            self.render_base(scenario.e.base),
            self.render_model(BLOCK_E, scenario.e),
            self.render_model(BLOCK_EHAT, scenario.e_hat),
            [f"[{BLOCK_H}]", scenario.h.render()],
            [f"[{BLOCK_HHAT}]", scenario.h_hat.render()],
            [f"[{BLOCK_F}]", scenario.kernel.render()],
        ]

        if scenario.sections:
            blocks.append(
                [f"[{BLOCK_SECTIONS}]"]
                + [f"{name} = {section.render()}" for name, section in scenario.sections.items()]
            )

        text = "\n\n".join("\n".join(block) for block in blocks) + "\n"

        return text
