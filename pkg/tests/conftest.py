import os
from pathlib import Path

from hypothesis import settings
import pytest

from transduality.managers.recipe_runner import RecipeRunner
from transduality.managers.scenario_parser import ScenarioParser
from transduality.models.base_algebra import FiniteCDGA

SCENARIOS_PATH = Path(__file__).parent.parent / "transduality" / "scenarios"
RECIPES_PATH = SCENARIOS_PATH / "recipes"

POSITIVE_SCENARIOS = [
    "hopf_s4",
    "hopf_s4_circle",
    "t4_self_dual",
    "t4_usual",
    "sphere_multidegree",
    "frame_rank2",
    "partial_frame",
    "relation_dual",
    "multidegree_frame",
]

SECTION_SCENARIOS = ["hopf_s4_circle", "t4_self_dual"]

# Degree 0 holds the idempotent e, so exp(F) never terminates on its own.
NON_CONNECTED_SCENARIO = """
[base]
name = idem
elements = 1:0, e:0
product e*e = e

[E]
generator psi:1 = 0

[Ehat]
generator phat:1 = 0

[F]
psi^phat (x) 1 + 1 (x) e

[sections]
odd = C: psi
"""

settings.register_profile("default", max_examples=50, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def scenario_path(name: str) -> Path:
    return SCENARIOS_PATH / f"{name}.scn"


def recipe_path(name: str) -> Path:
    return RECIPES_PATH / f"{name}.json"


_LOADED = {}


def load_scenario(name: str):
    """Parsed fixture, shared across tests; scenarios are immutable."""
    if name not in _LOADED:
        _LOADED[name] = ScenarioParser().load(scenario_path(name))

    return _LOADED[name]


@pytest.fixture
def parser() -> ScenarioParser:
    return ScenarioParser()


@pytest.fixture
def recipe_runner(parser) -> RecipeRunner:
    return RecipeRunner(parser)


@pytest.fixture(params=POSITIVE_SCENARIOS)
def positive_scenario(request):
    return load_scenario(request.param)


@pytest.fixture
def hopf():
    return load_scenario("hopf_s4")


@pytest.fixture
def t4_self_dual():
    return load_scenario("t4_self_dual")


@pytest.fixture
def torus_base() -> FiniteCDGA:
    """Constant forms on T^3 with the three coordinate vector fields."""
    basis = [
        ("1", 0),
        ("t1", 1),
        ("t2", 1),
        ("t3", 1),
        ("t12", 2),
        ("t13", 2),
        ("t23", 2),
        ("t123", 3),
    ]

    products = {
        ("t1", "t2"): {"t12": 1},
        ("t1", "t3"): {"t13": 1},
        ("t2", "t3"): {"t23": 1},
        ("t1", "t23"): {"t123": 1},
        ("t2", "t13"): {"t123": -1},
        ("t3", "t12"): {"t123": 1},
    }

    contractions = {
        "i1": {"t1": {"1": 1}, "t12": {"t2": 1}, "t13": {"t3": 1}, "t123": {"t23": 1}},
        "i2": {"t2": {"1": 1}, "t12": {"t1": -1}, "t23": {"t3": 1}, "t123": {"t13": -1}},
        "i3": {"t3": {"1": 1}, "t13": {"t1": -1}, "t23": {"t2": -1}, "t123": {"t12": 1}},
    }

    algebra = FiniteCDGA("t3", basis, products=products, contractions=contractions)

    return algebra


@pytest.fixture
def point_base() -> FiniteCDGA:
    return FiniteCDGA("point", [("1", 0)])
