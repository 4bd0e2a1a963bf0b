from collections.abc import Mapping
import logging

from ..common.enums import FiberSide
from .clifford import CliffordSection
from .exceptions import AlgebraMismatchError, InvalidElementError
from .tc_element import TCElement
from .transgressive_model import TransgressiveModel

_LOGGER = logging.getLogger(__name__)


class DualityScenario:
    """Pair of twisted transgressive models with a candidate kernel on their correspondence."""

    _name: str
    _description: str
    _twists: dict[FiberSide, TCElement]
    _correspondence: TransgressiveModel
    _kernel: TCElement
    _sections: dict[str, CliffordSection]

    def __init__(
        self,
        h: TCElement,
        h_hat: TCElement,
        kernel: TCElement,
        name: str = "scenario",
        description: str = "",
        sections: Mapping[str, CliffordSection] | None = None,
    ):
        e_model = h.model
        e_hat_model = h_hat.model

        if e_model.base != e_hat_model.base:
            raise AlgebraMismatchError("pair", e_model.base.name, e_hat_model.base.name)

        for side, twist in ((FiberSide.E, h), (FiberSide.EHAT, h_hat)):
            if not twist.is_odd:
                raise InvalidElementError(f"Twisting form on {side} must be odd")

            if not twist.is_closed:
                raise InvalidElementError(f"Twisting form on {side} is not closed")

        correspondence = kernel.model
        factors = correspondence.factors

        if factors is None or factors[0] != e_model or factors[1] != e_hat_model:
            correspondence = TransgressiveModel.make_correspondence(e_model, e_hat_model)
            kernel = correspondence.adopt(kernel)

        if not kernel.is_even:
            raise InvalidElementError("Kernel must be even")

        self._name = name
        self._description = description
        self._twists = {FiberSide.E: h, FiberSide.EHAT: h_hat}
        self._correspondence = correspondence
        self._kernel = kernel
        self._sections = {}

        for section_name, section in (sections or {}).items():
            if section.model != e_model:
                raise AlgebraMismatchError("attach a section of", section.model.name, e_model.name)

            self._sections[section_name] = section

        _LOGGER.debug(
            f"Scenario '{name}' loaded, "
            f"Generators: {len(e_model.generators)}/{len(e_hat_model.generators)}, "
            f"Sections: {len(self._sections)}"
        )

    @property
    def name(self) -> str:
        return self._name

    @property
    def description(self) -> str:
        return self._description

    @property
    def e(self) -> TransgressiveModel:
        return self._twists[FiberSide.E].model

    @property
    def e_hat(self) -> TransgressiveModel:
        return self._twists[FiberSide.EHAT].model

    @property
    def h(self) -> TCElement:
        return self._twists[FiberSide.E]

    @property
    def h_hat(self) -> TCElement:
        return self._twists[FiberSide.EHAT]

    @property
    def kernel(self) -> TCElement:
        return self._kernel

    @property
    def correspondence(self) -> TransgressiveModel:
        return self._correspondence

    @property
    def sections(self) -> dict[str, CliffordSection]:
        return dict(self._sections)

    def model(self, side: FiberSide) -> TransgressiveModel:
        return self._twists[side].model

    def twist(self, side: FiberSide) -> TCElement:
        return self._twists[side]

    def with_sections(self, sections: Mapping[str, CliffordSection]) -> "DualityScenario":
        scenario = DualityScenario(
            self.h, self.h_hat, self._kernel, self._name, self._description, sections
        )

        return scenario

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualityScenario):
            return NotImplemented

        is_equal = (
            self.h == other.h
            and self.h_hat == other.h_hat
            and self._kernel == other.kernel
            and self._sections == other.sections
        )

        return is_equal

    def __repr__(self):
        return f"DualityScenario({self._name}: {self.e.name} <-> {self.e_hat.name})"

    def to_dict(self) -> dict:
        obj = {
            "name": self._name,
            "description": self._description,
            "base": self.e.base.name,
            "E": list(self.e.labels),
            "Ehat": list(self.e_hat.labels),
            "H": self.h.render(),
            "Hhat": self.h_hat.render(),
            "F": self._kernel.render(),
            "sections": {name: section.render() for name, section in self._sections.items()},
        }

        return obj
