"""Transgressive models: a base algebra tensored with odd transgressive generators."""
from collections.abc import Callable, Iterable, Mapping, Sequence
from fractions import Fraction
import logging

from ..common.consts import DEFAULT_E_PREFIX
from ..common.enums import FiberSide
from ..common.linear_algebra import ExactMatrix, SparseVector
from ..common.monomials import (
    full_mask,
    members,
    popcount,
    position_sign,
    remap,
    sort_sign,
    wedge_sign,
)
from .base_algebra import BaseElement, FiniteCDGA
from .exceptions import AlgebraMismatchError, InvalidElementError, InvalidGeneratorError
from .tc_element import TCElement, Term, TermMap, add_terms

_LOGGER = logging.getLogger(__name__)


class OddGenerator:
    label: str
    degree: int
    transgression: BaseElement

    def __init__(self, label: str, degree: int, transgression: BaseElement):
        self.label = label
        self.degree = degree
        self.transgression = transgression

    @property
    def key(self) -> tuple:
        key = (self.label, self.degree, tuple(sorted(self.transgression.terms.items())))

        return key

    def __repr__(self):
        return f"{self.label}:{self.degree} -> {self.transgression.render()}"


class TransgressiveModel:
    """Base algebra tensored with an exterior algebra on odd generators.

    A correspondence remembers its two factors; its generators are those of
    the first factor followed by those of the second.
    """

    _name: str
    _base: FiniteCDGA
    _generators: tuple[OddGenerator, ...]
    _index: dict[str, int]
    _factors: tuple["TransgressiveModel", "TransgressiveModel"] | None
    _sub_models: dict[tuple[int, ...], "TransgressiveModel"]
    _key: tuple

    def __init__(
        self,
        base: FiniteCDGA,
        generators: Iterable[OddGenerator],
        name: str | None = None,
        factors: tuple["TransgressiveModel", "TransgressiveModel"] | None = None,
    ):
        self._base = base
        self._generators = tuple(generators)
        self._name = name or base.name
        self._factors = factors
        self._sub_models = {}

        self._index = {}

        for position, generator in enumerate(self._generators):
            self._validate_generator(generator)

            if generator.label in self._index:
                raise InvalidGeneratorError(
                    f"Duplicate generator label '{generator.label}' in '{self._name}'"
                )

            if generator.label in base.labels:
                raise InvalidGeneratorError(
                    f"Generator label '{generator.label}' clashes with a basis label of '{base.name}'"
                )

            self._index[generator.label] = position

        self._key = (base.key, tuple(generator.key for generator in self._generators))

    def _validate_generator(self, generator: OddGenerator):
        if generator.degree <= 0 or generator.degree % 2 == 0:
            raise InvalidGeneratorError(
                f"Generator '{generator.label}' has degree {generator.degree}, expected a positive odd degree"
            )

        transgression = generator.transgression

        if transgression.algebra != self._base:
            raise InvalidGeneratorError(
                f"Transgression of '{generator.label}' does not live in '{self._base.name}'"
            )

        if not transgression.is_zero and transgression.degree != generator.degree + 1:
            raise InvalidGeneratorError(
                f"Transgression of '{generator.label}' must be homogeneous of degree {generator.degree + 1}"
            )

        if not transgression.is_closed:
            raise InvalidGeneratorError(
                f"Transgression of '{generator.label}' is not closed"
            )

    @staticmethod
    def make_correspondence(
        first: "TransgressiveModel", second: "TransgressiveModel", name: str | None = None
    ) -> "TransgressiveModel":
        if first.base != second.base:
            raise AlgebraMismatchError(
                "build a correspondence from", first.base.name, second.base.name
            )

        correspondence = TransgressiveModel(
            first.base,
            first.generators + second.generators,
            name or f"{first.name} x {second.name}",
            (first, second),
        )

        return correspondence

    @staticmethod
    def partial_frame(
        base: FiniteCDGA,
        chern: Sequence[BaseElement],
        vectors: int,
        prefix: str = DEFAULT_E_PREFIX,
        name: str | None = None,
    ) -> "TransgressiveModel":
        """Model of a partial frame bundle of ``vectors`` vectors in a rank ``len(chern)`` bundle."""
        rank = len(chern)

        if not 1 <= vectors <= rank:
            raise InvalidGeneratorError(
                f"A rank {rank} bundle has no frames of {vectors} vectors"
            )

        generators = []

        for position in range(rank - vectors + 1, rank + 1):
            transgression = chern[position - 1]

            if not transgression.is_zero and transgression.degree != 2 * position:
                raise InvalidGeneratorError(
                    f"Chern class c{position} must have degree {2 * position}"
                )

            generators.append(
                OddGenerator(f"{prefix}{2 * position - 1}", 2 * position - 1, transgression)
            )

        model = TransgressiveModel(base, generators, name)

        return model

    @property
    def name(self) -> str:
        return self._name

    @property
    def base(self) -> FiniteCDGA:
        return self._base

    @property
    def generators(self) -> tuple[OddGenerator, ...]:
        return self._generators

    @property
    def labels(self) -> tuple[str, ...]:
        labels = tuple(generator.label for generator in self._generators)

        return labels

    @property
    def size(self) -> int:
        return len(self._generators)

    @property
    def dimension(self) -> int:
        dimension = (1 << self.size) * self._base.dimension

        return dimension

    @property
    def volume_mask(self) -> int:
        return full_mask(self.size)

    @property
    def factors(self) -> tuple["TransgressiveModel", "TransgressiveModel"] | None:
        return self._factors

    @property
    def is_correspondence(self) -> bool:
        return self._factors is not None

    @property
    def key(self) -> tuple:
        return self._key

    def __eq__(self, other) -> bool:
        if self is other:
            return True

        if not isinstance(other, TransgressiveModel):
            return NotImplemented

        return self._key == other.key

    def __hash__(self):
        return hash((self._base, self.labels))

    def __repr__(self):
        generators = ", ".join(repr(generator) for generator in self._generators)

        return f"TransgressiveModel({self._name}: {self._base.name}; {generators})"

    def index_of(self, label: str) -> int:
        if label not in self._index:
            raise InvalidElementError(f"Unknown generator '{label}' in '{self._name}'")

        return self._index[label]

    def has_generator(self, label: str) -> bool:
        return label in self._index

    def generator_degree(self, position: int) -> int:
        return self._generators[position].degree

    def degree_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}

        for generator in self._generators:
            counts[generator.degree] = counts.get(generator.degree, 0) + 1

        return counts

    def monomial_degree(self, mask: int) -> int:
        degree = sum(self._generators[position].degree for position in members(mask))

        return degree

    def monomial_label(self, mask: int) -> str:
        label = "^".join(self._generators[position].label for position in members(mask))

        return label

    def mask_of(self, labels: Sequence[str]) -> tuple[int, int]:
        """Canonical mask and sign of the product of the labelled generators."""
        positions = [self.index_of(label) for label in labels]
        mask, sign = sort_sign(positions)

        return mask, sign

    def flat_index(self, mask: int, index: int) -> int:
        return mask * self._base.dimension + index

    def flat_term(self, flat: int) -> Term:
        mask, index = divmod(flat, self._base.dimension)

        return mask, index

    def basis(self) -> list[Term]:
        basis = [self.flat_term(flat) for flat in range(self.dimension)]

        return basis

    def element(self, terms: Mapping[Term, Fraction | int] | None = None) -> TCElement:
        terms = terms or {}

        for mask, index in terms:
            if mask >> self.size or not 0 <= index < self._base.dimension:
                raise InvalidElementError(
                    f"Term ({mask}, {index}) is outside of '{self._name}'"
                )

        return TCElement(self, terms)

    def element_from_vector(self, vector: Mapping[int, Fraction]) -> TCElement:
        terms = {self.flat_term(flat): value for flat, value in vector.items()}

        return TCElement(self, terms)

    def zero(self) -> TCElement:
        return TCElement(self, {})

    def one(self) -> TCElement:
        return TCElement(self, {(0, self._base.unit_index): Fraction(1)})

    def generator(self, label: str) -> TCElement:
        position = self.index_of(label)
        element = TCElement(self, {(1 << position, self._base.unit_index): Fraction(1)})

        return element

    def lift(self, element: BaseElement) -> TCElement:
        if element.algebra != self._base:
            raise AlgebraMismatchError("lift", element.algebra.name, self._base.name)

        terms = {(0, index): value for index, value in element.terms.items()}

        return TCElement(self, terms)

    def monomial(self, labels: Sequence[str], coefficient: BaseElement | None = None) -> TCElement:
        mask, sign = self.mask_of(labels)
        coefficient = self._base.one() if coefficient is None else coefficient

        terms = {(mask, index): sign * value for index, value in coefficient.terms.items()}

        return TCElement(self, terms)

    def adopt(self, element: TCElement) -> TCElement:
        """The same element re-owned by this model, when the generators agree."""
        if element.model == self:
            return TCElement(self, element.terms)

        raise AlgebraMismatchError("adopt", element.model.name, self._name)

    def _check_owner(self, operation: str, element: TCElement):
        if element.model != self:
            raise AlgebraMismatchError(operation, element.model.name, self._name)

    def wedge_terms(self, left: Mapping[Term, Fraction], right: Mapping[Term, Fraction]) -> TermMap:
        base = self._base
        result: TermMap = {}

        for (left_mask, left_index), left_value in left.items():
            left_degree = base.degree(left_index)

            for (right_mask, right_index), right_value in right.items():
                sign = wedge_sign(left_mask, right_mask)

                if not sign:
                    continue

                if left_degree % 2 and popcount(right_mask) % 2:
                    sign = -sign

                product = base.basis_product(left_index, right_index)

                if not product:
                    continue

                mask = left_mask | right_mask
                factor = sign * left_value * right_value

                for index, value in product.items():
                    add_terms(result, {(mask, index): value}, factor)

        return result

    def differential(self, element: TCElement) -> TCElement:
        self._check_owner("differentiate", element)

        base = self._base
        result: TermMap = {}

        for (mask, index), value in element.terms.items():
            for position in members(mask):
                transgression = self._generators[position].transgression.terms

                if not transgression:
                    continue

                sign = position_sign(mask, position)
                product = base.multiply_vectors(transgression, {index: Fraction(1)})
                rest = mask & ~(1 << position)

                for target, coefficient in product.items():
                    add_terms(result, {(rest, target): coefficient}, sign * value)

            sign = -1 if popcount(mask) % 2 else 1

            for target, coefficient in base.basis_differential(index).items():
                add_terms(result, {(mask, target): coefficient}, sign * value)

        return TCElement(self, result)

    def check_twist(self, twist: TCElement) -> TCElement:
        """The twisting form re-owned by this model, once it is known to be odd and closed."""
        twist = self.adopt(twist)

        if not twist.is_odd:
            raise InvalidElementError("Twisting form must be odd")

        if not twist.is_closed:
            raise InvalidElementError(f"Twisting form {twist.render()} is not closed")

        return twist

    def twisted_differential(self, twist: TCElement, element: TCElement) -> TCElement:
        twist = self.check_twist(twist)

        result = self.differential(element) + twist.wedge(element)

        return result

    def contract(self, name: str, element: TCElement) -> TCElement:
        """Base contraction extended by iota(psi_K ^ a) = (-1)^|K| psi_K ^ iota(a)."""
        self._check_owner("contract", element)

        result: TermMap = {}

        for (mask, index), value in element.terms.items():
            sign = -1 if popcount(mask) % 2 else 1

            for target, coefficient in self._base.basis_contraction(name, index).items():
                add_terms(result, {(mask, target): coefficient}, sign * value)

        return TCElement(self, result)

    def sub_model(self, positions: Sequence[int]) -> "TransgressiveModel":
        """Model on the given generators, reusing a factor when they match one."""
        positions = tuple(positions)

        if positions in self._sub_models:
            return self._sub_models[positions]

        model = self if positions == tuple(range(self.size)) else None

        if model is None and self._factors is not None:
            first, second = self._factors

            if positions == tuple(range(first.size)):
                model = first

            elif positions == tuple(range(first.size, self.size)):
                model = second

        if model is None:
            if not positions:
                name = self._base.name

            else:
                name = f"{self._name}[{','.join(self._generators[p].label for p in positions)}]"

            model = TransgressiveModel(
                self._base, [self._generators[p] for p in positions], name
            )

        self._sub_models[positions] = model

        return model

    def factor(self, side: FiberSide) -> "TransgressiveModel":
        if self._factors is None:
            raise InvalidElementError(f"'{self._name}' is not a correspondence")

        factor = self._factors[0] if side == FiberSide.E else self._factors[1]

        return factor

    def factor_positions(self, side: FiberSide) -> list[int]:
        first = self.factor(FiberSide.E)

        positions = (
            list(range(first.size))
            if side == FiberSide.E
            else list(range(first.size, self.size))
        )

        return positions

    def integrate(self, element: TCElement, positions: Sequence[int]) -> TCElement:
        """Integration over the fiber spanned by the given generators.

        Writes psi_K = s * rho ^ sigma with sigma the ordered product of the
        integrated generators and extracts sigma on the right, so that
        rho ^ sigma ^ a maps to s * (-1)^(|sigma||a|) * rho ^ a.
        """
        self._check_owner("integrate", element)

        fiber = 0

        for position in positions:
            fiber |= 1 << position

        kept = [position for position in range(self.size) if not fiber >> position & 1]
        target = self.sub_model(kept)
        compress = {position: new for new, position in enumerate(kept)}
        fiber_odd = popcount(fiber) % 2 == 1

        result: TermMap = {}

        for (mask, index), value in element.terms.items():
            if mask & fiber != fiber:
                continue

            rest = mask & ~fiber
            sign = wedge_sign(rest, fiber)

            if fiber_odd and self._base.degree(index) % 2:
                sign = -sign

            new_mask = 0

            for position in members(rest):
                new_mask |= 1 << compress[position]

            add_terms(result, {(new_mask, index): value}, Fraction(sign))

        return TCElement(target, result)

    def integrate_fiber(self, element: TCElement) -> TCElement:
        return self.integrate(element, range(self.size))

    def push_forward(self, element: TCElement, onto: FiberSide) -> TCElement:
        """Integrates out the other factor of a correspondence."""
        positions = self.factor_positions(onto.other())
        result = self.integrate(element, positions)

        return result

    def pullback(self, element: TCElement, side: FiberSide) -> TCElement:
        factor = self.factor(side)

        if element.model != factor:
            raise AlgebraMismatchError("pull back", element.model.name, factor.name)

        positions = self.factor_positions(side)

        terms = {
            (remap(mask, positions), index): value
            for (mask, index), value in element.terms.items()
        }

        return TCElement(self, terms)

    def operator_matrix(self, operator: Callable[[TCElement], TCElement], target: "TransgressiveModel | None" = None) -> ExactMatrix:
        target = target or self
        columns: list[SparseVector] = []

        for mask, index in self.basis():
            image = operator(TCElement(self, {(mask, index): Fraction(1)}))
            columns.append(image.vector())

        matrix = ExactMatrix.from_columns(columns, target.dimension)

        return matrix

    def differential_matrix(self, twist: TCElement | None = None) -> ExactMatrix:
        if twist is None:
            return self.operator_matrix(self.differential)

        matrix = self.operator_matrix(lambda element: self.twisted_differential(twist, element))

        return matrix
