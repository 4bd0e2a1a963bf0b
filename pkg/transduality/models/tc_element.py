"""Elements of a transgressive model.

An element is a sparse map ``(mask, base_index) -> Fraction`` standing for
the sum of ``coefficient * psi_mask ^ e_base_index``; the base coefficient
always sits to the right of the generators.
"""
from collections.abc import Mapping
from fractions import Fraction
from typing import TYPE_CHECKING

from .base_algebra import BaseElement, format_coefficient
from .exceptions import AlgebraMismatchError, InvalidElementError

if TYPE_CHECKING:
    from .transgressive_model import TransgressiveModel

Term = tuple[int, int]
TermMap = dict[Term, Fraction]


def add_terms(target: TermMap, terms: Mapping[Term, Fraction], scale: Fraction = Fraction(1)):
    for term, value in terms.items():
        updated = target.get(term, Fraction(0)) + scale * value

        if updated:
            target[term] = updated

        else:
            target.pop(term, None)


class TCElement:
    _model: "TransgressiveModel"
    _terms: TermMap

    def __init__(self, model: "TransgressiveModel", terms: Mapping[Term, Fraction | int]):
        self._model = model
        self._terms = {term: Fraction(value) for term, value in terms.items() if value}

    @property
    def model(self) -> "TransgressiveModel":
        return self._model

    @property
    def terms(self) -> TermMap:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def term_degree(self, term: Term) -> int:
        mask, index = term
        degree = self._model.monomial_degree(mask) + self._model.base.degree(index)

        return degree

    @property
    def degrees(self) -> set[int]:
        degrees = {self.term_degree(term) for term in self._terms}

        return degrees

    @property
    def degree(self) -> int | None:
        degrees = self.degrees
        degree = next(iter(degrees)) if len(degrees) == 1 else None

        return degree

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def is_even(self) -> bool:
        return all(degree % 2 == 0 for degree in self.degrees)

    @property
    def is_odd(self) -> bool:
        return all(degree % 2 == 1 for degree in self.degrees)

    @property
    def is_closed(self) -> bool:
        return self.d().is_zero

    @property
    def basic_degrees(self) -> set[int]:
        degrees = {self._model.base.degree(index) for _, index in self._terms}

        return degrees

    @property
    def masks(self) -> set[int]:
        masks = {mask for mask, _ in self._terms}

        return masks

    def basic_component(self, degree: int) -> "TCElement":
        terms = {
            term: value
            for term, value in self._terms.items()
            if self._model.base.degree(term[1]) == degree
        }

        return TCElement(self._model, terms)

    def component(self, degree: int) -> "TCElement":
        terms = {
            term: value
            for term, value in self._terms.items()
            if self.term_degree(term) == degree
        }

        return TCElement(self._model, terms)

    def coefficient(self, mask: int) -> BaseElement:
        terms = {index: value for (term_mask, index), value in self._terms.items() if term_mask == mask}

        return BaseElement(self._model.base, terms)

    def components(self) -> dict[int, BaseElement]:
        components = {mask: self.coefficient(mask) for mask in sorted(self.masks)}

        return components

    def scalar_coefficient(self, mask: int) -> Fraction:
        value = self._terms.get((mask, self._model.base.unit_index), Fraction(0))

        return value

    @property
    def scalar_part(self) -> Fraction:
        return self.scalar_coefficient(0)

    def top_coefficient(self) -> BaseElement:
        return self.coefficient(self._model.volume_mask)

    def _check_model(self, operation: str, other: "TCElement"):
        if not isinstance(other, TCElement):
            raise InvalidElementError(f"Cannot {operation} {type(other).__name__}")

        if other.model != self._model:
            raise AlgebraMismatchError(operation, self._model.name, other.model.name)

    def _combine(self, other: "TCElement", scale: int) -> "TCElement":
        if not isinstance(other, TCElement):
            return NotImplemented

        self._check_model("add", other)

        terms = dict(self._terms)
        add_terms(terms, other.terms, Fraction(scale))

        return TCElement(self._model, terms)

    def __add__(self, other: "TCElement") -> "TCElement":
        return self._combine(other, 1)

    def __sub__(self, other: "TCElement") -> "TCElement":
        return self._combine(other, -1)

    def __neg__(self) -> "TCElement":
        return self.scale(-1)

    def scale(self, factor: Fraction | int) -> "TCElement":
        factor = Fraction(factor)
        terms = {term: factor * value for term, value in self._terms.items()}

        return TCElement(self._model, terms)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)

        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def wedge(self, other: "TCElement") -> "TCElement":
        self._check_model("wedge", other)

        terms = self._model.wedge_terms(self._terms, other.terms)

        return TCElement(self._model, terms)

    def __xor__(self, other: "TCElement") -> "TCElement":
        return self.wedge(other)

    def d(self) -> "TCElement":
        return self._model.differential(self)

    def exp_wedge(self) -> "TCElement":
        """Sum of the wedge powers F^k / k!, which terminates by nilpotency."""
        if not self.is_even:
            raise InvalidElementError("Exponential is only defined for even elements")

        if self.scalar_part:
            raise InvalidElementError(
                f"Exponential of an element with scalar part {self.scalar_part}"
            )

        # Every factor carries a generator or positive base degree.
        limit = self._model.size + self._model.base.max_degree + 1

        result = self._model.one()
        power = self._model.one()

        for order in range(1, limit + 1):
            power = power.wedge(self).scale(Fraction(1, order))

            if power.is_zero:
                return result

            result = result + power

        raise InvalidElementError(
            f"{self.render()} is not nilpotent, power {limit} does not vanish"
        )

    def vector(self) -> dict[int, Fraction]:
        vector = {
            self._model.flat_index(mask, index): value
            for (mask, index), value in self._terms.items()
        }

        return vector

    def __eq__(self, other) -> bool:
        if not isinstance(other, TCElement):
            return NotImplemented

        is_equal = self._model == other.model and self._terms == other.terms

        return is_equal

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items())))

    def render(self) -> str:
        if not self._terms:
            return "0"

        base = self._model.base
        parts = []

        for position, ((mask, index), value) in enumerate(sorted(self._terms.items())):
            base_label = base.label(index)

            if mask:
                label = f"{self._model.monomial_label(mask)} (x) {base_label}"

            else:
                label = base_label

            parts.append(format_coefficient(value, label, position == 0))

        text = "".join(parts)

        return text

    def __repr__(self):
        return f"TCElement({self._model.name}: {self.render()})"

    def to_dict(self) -> dict[str, str]:
        base = self._model.base

        data = {
            f"{self._model.monomial_label(mask) or '1'} (x) {base.label(index)}": str(value)
            for (mask, index), value in sorted(self._terms.items())
        }

        return data
