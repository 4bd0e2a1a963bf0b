from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from transduality.common.enums import FiberSide
from transduality.models.base_algebra import FiniteCDGA
from transduality.models.exceptions import AlgebraMismatchError, InvalidElementError, InvalidGeneratorError
from transduality.models.transgressive_model import OddGenerator, TransgressiveModel

from . import oracles
from .conftest import POSITIVE_SCENARIOS, load_scenario

MODEL_SCENARIOS = ["hopf_s4_circle", "t4_usual", "frame_rank2", "relation_dual"]


def random_element(model, data):
    basis = model.basis()
    terms = data.draw(
        st.dictionaries(
            st.sampled_from(basis),
            st.integers(min_value=-3, max_value=3).filter(bool),
            max_size=4,
        )
    )

    return model.element(terms)


@pytest.mark.parametrize("name", MODEL_SCENARIOS)
@given(data=st.data())
def test_wedge_matches_label_oracle(name, data):
    model = load_scenario(name).correspondence
    left = random_element(model, data)
    right = random_element(model, data)

    expected = oracles.wedge(model, oracles.to_labels(left), oracles.to_labels(right))

    assert oracles.to_labels(left.wedge(right)) == expected


@pytest.mark.parametrize("name", MODEL_SCENARIOS)
@given(data=st.data())
def test_differential_matches_label_oracle(name, data):
    model = load_scenario(name).correspondence
    element = random_element(model, data)

    expected = oracles.differential(model, oracles.to_labels(element))

    assert oracles.to_labels(element.d()) == expected


@pytest.mark.parametrize("name", POSITIVE_SCENARIOS)
def test_differential_squares_to_zero(name):
    scenario = load_scenario(name)

    for model in (scenario.e, scenario.e_hat):
        matrix = model.differential_matrix()

        assert (matrix @ matrix).is_zero


@pytest.mark.parametrize("name", MODEL_SCENARIOS)
@given(data=st.data())
def test_leibniz_rule(name, data):
    model = load_scenario(name).correspondence
    left = random_element(model, data).component(data.draw(st.integers(min_value=0, max_value=6)))
    right = random_element(model, data)

    sign = -1 if left.is_odd and not left.is_zero else 1
    expected = left.d().wedge(right) + left.wedge(right.d()).scale(sign)

    assert left.wedge(right).d() == expected


@pytest.mark.parametrize("name", POSITIVE_SCENARIOS)
def test_twisted_differential_squares_to_zero(name):
    scenario = load_scenario(name)

    for side in FiberSide:
        model = scenario.model(side)
        matrix = model.differential_matrix(scenario.twist(side))

        assert (matrix @ matrix).is_zero


@pytest.mark.parametrize("name", ["hopf_s4_circle", "t4_usual", "frame_rank2"])
def test_push_forward_is_a_chain_map(name):
    """Extracting the fiber on the right makes the push forward commute with d."""
    scenario = load_scenario(name)
    correspondence = scenario.correspondence

    for mask, index in correspondence.basis():
        element = correspondence.element({(mask, index): 1})

        left = correspondence.push_forward(element.d(), FiberSide.EHAT)
        right = correspondence.push_forward(element, FiberSide.EHAT).d()

        assert left == right


@pytest.mark.parametrize("name", MODEL_SCENARIOS)
@given(data=st.data())
def test_integration_matches_label_oracle(name, data):
    scenario = load_scenario(name)
    correspondence = scenario.correspondence
    element = random_element(correspondence, data)

    expected = oracles.integrate(correspondence, oracles.to_labels(element), list(scenario.e.labels))
    pushed = correspondence.push_forward(element, FiberSide.EHAT)

    assert pushed.model == scenario.e_hat
    assert oracles.to_labels(pushed) == expected


def test_integrate_extracts_on_the_right(hopf):
    correspondence = hopf.correspondence
    u = correspondence.base.element({"u": 1})

    psi_phat = correspondence.monomial(["psi", "phat"], u)
    phat_psi = correspondence.monomial(["phat", "psi"], u)

    assert correspondence.push_forward(psi_phat, FiberSide.EHAT) == -hopf.e_hat.generator("phat").wedge(
        hopf.e_hat.lift(u)
    )
    assert correspondence.push_forward(phat_psi, FiberSide.EHAT) == hopf.e_hat.monomial(["phat"], u)


def test_pullback_and_factors(hopf):
    correspondence = hopf.correspondence

    assert correspondence.factor(FiberSide.E) == hopf.e
    assert correspondence.factor_positions(FiberSide.EHAT) == [1]
    assert correspondence.pullback(hopf.e_hat.generator("phat"), FiberSide.EHAT) == correspondence.generator("phat")

    with pytest.raises(AlgebraMismatchError):
        correspondence.pullback(hopf.e_hat.generator("phat"), FiberSide.E)


def test_contraction_sign():
    scenario = load_scenario("hopf_s4_circle")
    model = scenario.e
    t = model.base.element({"t": 1})

    assert model.contract("i1", model.monomial(["psi"], t)) == -model.generator("psi")
    assert model.contract("i1", model.lift(t)) == model.one()


def test_mask_of_and_monomial_signs():
    model = load_scenario("t4_usual").e

    assert model.mask_of(["psi2", "psi1"]) == (0b11, -1)
    assert model.monomial(["psi1", "psi1"]).is_zero
    assert model.generator("psi2").wedge(model.generator("psi1")) == -model.monomial(["psi1", "psi2"])


def test_exponential_terminates(t4_self_dual):
    kernel = t4_self_dual.kernel
    exponential = kernel.exp_wedge()

    assert exponential == t4_self_dual.correspondence.one() + kernel

    with pytest.raises(InvalidElementError):
        t4_self_dual.correspondence.one().exp_wedge()


def test_differential_values(hopf):
    model = hopf.e
    u = model.base.element({"u": 1})

    assert model.generator("psi").d() == model.lift(u)
    assert model.twisted_differential(hopf.h, model.one()) == hopf.h
    assert model.twisted_differential(hopf.h, model.generator("psi")) == model.lift(u)
    assert model.dimension == 4
    assert model.degree_counts() == {3: 1}
    assert hopf.e.generator("psi").scalar_part == Fraction(0)


@pytest.mark.parametrize("name", POSITIVE_SCENARIOS)
def test_exponential_of_negative_is_inverse(name):
    scenario = load_scenario(name)
    kernel = scenario.kernel

    product = kernel.exp_wedge().wedge(kernel.scale(-1).exp_wedge())

    assert product == scenario.correspondence.one()


def test_exponential_of_non_nilpotent_kernel():
    base = FiniteCDGA("idem", [("1", 0), ("e", 0)], products={("e", "e"): {"e": 1}})
    zero = base.zero()
    e = TransgressiveModel(base, [OddGenerator("psi", 1, zero)])
    e_hat = TransgressiveModel(base, [OddGenerator("phat", 1, zero)])
    correspondence = TransgressiveModel.make_correspondence(e, e_hat)

    kernel = correspondence.monomial(["psi", "phat"]) + correspondence.lift(base.element({"e": 1}))

    with pytest.raises(InvalidElementError, match="not nilpotent"):
        kernel.exp_wedge()


def test_twist_must_be_closed(hopf):
    model = hopf.e
    psi = model.generator("psi")

    assert not psi.is_closed

    with pytest.raises(InvalidElementError, match="not closed"):
        model.twisted_differential(psi, model.one())

    with pytest.raises(InvalidElementError, match="odd"):
        model.twisted_differential(model.one(), model.one())


def test_partial_frame_vector_range():
    base = load_scenario("frame_rank2").e.base
    chern = [generator.transgression for generator in load_scenario("frame_rank2").e.generators]

    assert TransgressiveModel.partial_frame(base, chern, 1).labels == ("psi3",)

    for vectors in (0, 3):
        with pytest.raises(InvalidGeneratorError):
            TransgressiveModel.partial_frame(base, chern, vectors)


@pytest.mark.parametrize("side", list(FiberSide))
@pytest.mark.parametrize("name", MODEL_SCENARIOS)
@given(data=st.data())
def test_push_forward_projection_formula(name, side, data):
    """Forms pulled back from the target factor come out of the fiber integral on the left."""
    correspondence = load_scenario(name).correspondence
    form = random_element(correspondence.factor(side), data)
    element = random_element(correspondence, data)

    left = correspondence.push_forward(correspondence.pullback(form, side).wedge(element), side)
    right = form.wedge(correspondence.push_forward(element, side))

    assert left == right
