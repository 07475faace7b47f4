"""Shared pytest fixtures: example graphs, clean settings and a seeded RNG."""

import random

import pytest

from helpers import load_fixture
from wog_toric.server.algebra.graph import WeightedOrientedGraph
from wog_toric.server.algebra.settings import ToricSettings


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch: pytest.MonkeyPatch):
    """Every test starts from the default caps."""
    for variable in [
        "WOG_TORIC_MAX_CYCLES",
        "WOG_TORIC_CAP_FIBER",
        "WOG_TORIC_CAP_CANDIDATES",
        "WOG_TORIC_CAP_GRAVER",
        "WOG_TORIC_CAP_GROEBNER",
        "WOG_TORIC_CIRCUIT_COLUMNS",
        "WOG_TORIC_ORDER_SAMPLES",
        "WOG_TORIC_ORDER_SEED",
    ]:
        monkeypatch.delenv(variable, raising=False)
    ToricSettings.reset()
    yield
    ToricSettings.reset()


@pytest.fixture(scope="session")
def fig3() -> WeightedOrientedGraph:
    return load_fixture("fig3")


@pytest.fixture(scope="session")
def fig4() -> WeightedOrientedGraph:
    return load_fixture("fig4")


@pytest.fixture(scope="session")
def fig5() -> WeightedOrientedGraph:
    return load_fixture("fig5")


@pytest.fixture(scope="session")
def fig6() -> WeightedOrientedGraph:
    return load_fixture("fig6")


@pytest.fixture(scope="session")
def fig7() -> WeightedOrientedGraph:
    return load_fixture("fig7")


@pytest.fixture(scope="session")
def theta_weight_one() -> WeightedOrientedGraph:
    return load_fixture("theta_weight_one")


@pytest.fixture(scope="session")
def d2_triple() -> WeightedOrientedGraph:
    return load_fixture("d2_triple")



@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)

