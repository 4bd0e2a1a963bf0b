"""Changes of generating set of a transgressive model.

A change replaces the generators of each degree by an invertible linear
combination of themselves, corrected by terms in generators of strictly
lower degree whose differential is basic.
"""
from collections.abc import Mapping, Sequence
from fractions import Fraction
import logging

from ..common.linear_algebra import ExactMatrix
from ..common.monomials import members
from .base_algebra import BaseElement
from .exceptions import AlgebraMismatchError, InvalidGeneratorError, SingularMatrixError
from .tc_element import TCElement
from .transgressive_model import OddGenerator, TransgressiveModel

_LOGGER = logging.getLogger(__name__)


class GeneratorMap:
    """DGA homomorphism between transgressive models given on generators."""

    _source: TransgressiveModel
    _target: TransgressiveModel
    _images: dict[int, TCElement]
    _cache: dict[int, TCElement]

    def __init__(
        self,
        source: TransgressiveModel,
        target: TransgressiveModel,
        images: Mapping[int, TCElement],
    ):
        if source.base != target.base:
            raise AlgebraMismatchError("map", source.base.name, target.base.name)

        self._source = source
        self._target = target
        self._images = {}
        self._cache = {0: target.one()}

        for position, image in images.items():
            if image.model != target:
                raise AlgebraMismatchError("map into", image.model.name, target.name)

            degree = source.generator_degree(position)

            if not image.is_zero and image.degree != degree:
                raise InvalidGeneratorError(
                    f"Image of '{source.labels[position]}' must be homogeneous of degree {degree}"
                )

            self._images[position] = image

    @property
    def source(self) -> TransgressiveModel:
        return self._source

    @property
    def target(self) -> TransgressiveModel:
        return self._target

    @property
    def images(self) -> dict[int, TCElement]:
        return dict(self._images)

    def image(self, label: str) -> TCElement:
        return self._images[self._source.index_of(label)]

    def _monomial_image(self, mask: int) -> TCElement:
        if mask in self._cache:
            return self._cache[mask]

        result = self._target.one()

        for position in members(mask):
            if position not in self._images:
                raise InvalidGeneratorError(
                    f"No image for generator '{self._source.labels[position]}'"
                )

            result = result.wedge(self._images[position])

        self._cache[mask] = result

        return result

    def apply(self, element: TCElement) -> TCElement:
        if element.model != self._source:
            raise AlgebraMismatchError("map", element.model.name, self._source.name)

        result = self._target.zero()
        by_mask: dict[int, dict[int, Fraction]] = {}

        for (mask, index), value in element.terms.items():
            by_mask.setdefault(mask, {})[index] = value

        for mask, terms in by_mask.items():
            coefficient = self._target.lift(BaseElement(self._target.base, terms))
            result = result + self._monomial_image(mask).wedge(coefficient)

        return result

    def commutes_with_differential(self) -> bool:
        for position, image in self._images.items():
            transgression = self._source.generators[position].transgression

            if self._target.differential(image) != self._target.lift(transgression):
                return False

        return True


class GeneratorChange:
    _blocks: dict[int, ExactMatrix]
    _corrections: dict[str, TCElement]
    _labels: dict[str, str]

    def __init__(
        self,
        blocks: Mapping[int, Sequence[Sequence[Fraction | int]]] | None = None,
        corrections: Mapping[str, TCElement] | None = None,
        labels: Mapping[str, str] | None = None,
    ):
        self._blocks = {
            degree: ExactMatrix.from_lists([list(row) for row in rows])
            for degree, rows in (blocks or {}).items()
        }
        self._corrections = dict(corrections or {})
        self._labels = dict(labels or {})

    @property
    def blocks(self) -> dict[int, ExactMatrix]:
        return dict(self._blocks)

    @property
    def corrections(self) -> dict[str, TCElement]:
        return dict(self._corrections)

    def block(self, degree: int, size: int) -> ExactMatrix:
        block = self._blocks.get(degree, ExactMatrix.identity(size))

        if block.shape != (size, size):
            raise InvalidGeneratorError(
                f"Degree {degree} block must be {size}x{size}, got {block.shape}"
            )

        return block

    def determinant(self, model: TransgressiveModel) -> Fraction:
        result = Fraction(1)

        for degree, count in model.degree_counts().items():
            result *= self.block(degree, count).determinant()

        return result

    def _positions_by_degree(self, model: TransgressiveModel) -> dict[int, list[int]]:
        positions: dict[int, list[int]] = {}

        for position, generator in enumerate(model.generators):
            positions.setdefault(generator.degree, []).append(position)

        return dict(sorted(positions.items()))

    def _correction(self, model: TransgressiveModel, position: int) -> TCElement:
        label = model.labels[position]
        correction = self._corrections.get(label)

        if correction is None or correction.is_zero:
            return model.zero()

        if correction.model != model:
            raise AlgebraMismatchError("correct", correction.model.name, model.name)

        degree = model.generator_degree(position)

        if correction.degree != degree:
            raise InvalidGeneratorError(
                f"Correction of '{label}' must be homogeneous of degree {degree}"
            )

        for mask, _ in correction.terms:
            if any(model.generator_degree(p) >= degree for p in members(mask)):
                raise InvalidGeneratorError(
                    f"Correction of '{label}' may only use generators of degree below {degree}"
                )

        return correction

    def apply_to(
        self, model: TransgressiveModel, name: str | None = None
    ) -> tuple[TransgressiveModel, GeneratorMap, GeneratorMap]:
        """New model plus the maps old -> new and new -> old."""
        old_images: dict[int, TCElement] = {}
        generators: dict[int, OddGenerator] = {}
        blocks = self._positions_by_degree(model)
        inverses = {}

        for degree, positions in blocks.items():
            block = self.block(degree, len(positions))

            if block.determinant() == 0:
                raise SingularMatrixError(f"Degree {degree} block is singular")

            inverses[degree] = block.inverse()

            for row, position in enumerate(positions):
                image = self._correction(model, position)

                for column, value in block.row(row).items():
                    image = image + model.generator(model.labels[positions[column]]).scale(value)

                differential = model.differential(image)

                if any(mask for mask, _ in differential.terms):
                    raise InvalidGeneratorError(
                        f"Differential of the new generator at '{model.labels[position]}' is not basic"
                    )

                old_label = model.labels[position]

                generators[position] = OddGenerator(
                    self._labels.get(old_label, old_label),
                    degree,
                    differential.coefficient(0),
                )

                old_images[position] = image

        new_model = TransgressiveModel(
            model.base,
            [generators[position] for position in range(model.size)],
            name or model.name,
        )

        to_old = GeneratorMap(new_model, model, old_images)

        new_images: dict[int, TCElement] = {}

        for degree, positions in blocks.items():
            partial = GeneratorMap(model, new_model, new_images)
            inverse = inverses[degree]

            shifted = []

            for position in positions:
                correction = partial.apply(self._correction(model, position))
                shifted.append(new_model.generator(new_model.labels[position]) - correction)

            for row, position in enumerate(positions):
                image = new_model.zero()

                for column, value in inverse.row(row).items():
                    image = image + shifted[column].scale(value)

                new_images[position] = image

        to_new = GeneratorMap(model, new_model, new_images)

        _LOGGER.debug(
            f"Changed generators of '{model.name}', Determinant: {self.determinant(model)}"
        )

        return new_model, to_new, to_old
