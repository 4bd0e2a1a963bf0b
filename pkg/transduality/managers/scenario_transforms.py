"""Scenario level operations: swapping the two sides and changing generating sets."""
import logging

from ..common.enums import FiberSide
from ..common.monomials import members, sort_sign
from ..models.duality_scenario import DualityScenario
from ..models.generator_change import GeneratorChange, GeneratorMap
from ..models.tc_element import TCElement, TermMap, add_terms
from ..models.transgressive_model import TransgressiveModel

_LOGGER = logging.getLogger(__name__)


def swap_scenario(scenario: DualityScenario) -> DualityScenario:
    """Exchanges (E, H) with (Ehat, Hhat); the kernel is permuted and negated."""
    first_size = scenario.e.size
    second_size = scenario.e_hat.size

    correspondence = TransgressiveModel.make_correspondence(scenario.e_hat, scenario.e)

    def moved(position: int) -> int:
        if position < first_size:
            return second_size + position

        return position - first_size

    terms: TermMap = {}

    for (mask, index), value in scenario.kernel.terms.items():
        new_mask, sign = sort_sign([moved(position) for position in members(mask)])
        add_terms(terms, {(new_mask, index): value}, -sign)

    kernel = TCElement(correspondence, terms)

    swapped = DualityScenario(
        scenario.h_hat,
        scenario.h,
        kernel,
        f"{scenario.name} (swapped)",
        scenario.description,
    )

    if scenario.sections:
        _LOGGER.info(f"Sections of '{scenario.name}' are not carried over to the swapped scenario")

    return swapped


def change_scenario_generators(
    scenario: DualityScenario, side: FiberSide, change: GeneratorChange
) -> DualityScenario:
    """Re-expresses one side, its twist and the kernel in a new generating set."""
    model = scenario.model(side)
    new_model, to_new, _ = change.apply_to(model)

    other = scenario.model(side.other())
    old_correspondence = scenario.correspondence

    if side == FiberSide.E:
        new_correspondence = TransgressiveModel.make_correspondence(new_model, other)

    else:
        new_correspondence = TransgressiveModel.make_correspondence(other, new_model)

    side_positions = old_correspondence.factor_positions(side)
    images = {}

    for position in range(old_correspondence.size):
        label = old_correspondence.labels[position]

        if position in side_positions:
            local = side_positions.index(position)
            image = to_new.images[local]
            images[position] = new_correspondence.pullback(image, side)

        else:
            images[position] = new_correspondence.generator(label)

    lift = GeneratorMap(old_correspondence, new_correspondence, images)
    kernel = lift.apply(scenario.kernel)

    twists = {
        side: to_new.apply(scenario.twist(side)),
        side.other(): scenario.twist(side.other()),
    }

    sections = scenario.sections if side == FiberSide.EHAT else {}

    changed = DualityScenario(
        twists[FiberSide.E],
        twists[FiberSide.EHAT],
        kernel,
        scenario.name,
        scenario.description,
        sections,
    )

    _LOGGER.debug(f"Changed generators on {side} of '{scenario.name}'")

    return changed
