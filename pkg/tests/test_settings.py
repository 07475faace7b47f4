"""Resource caps from the environment."""

import pytest

from wog_toric.server.algebra.errors import ConfigurationError
from wog_toric.server.algebra.settings import (
    ResourceCaps,
    ToricSettings,
    get_caps,
    override_caps,
)


class TestToricSettings:
    def test_defaults(self):
        assert get_caps() == ResourceCaps()

    def test_singleton(self):
        assert ToricSettings() is ToricSettings()

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("WOG_TORIC_CAP_FIBER", "123")
        monkeypatch.setenv("WOG_TORIC_ORDER_SEED", " ")
        ToricSettings.reset()
        caps = get_caps()
        assert caps.fiber_size == 123
        assert caps.order_seed == ResourceCaps().order_seed

    def test_not_an_integer(self, monkeypatch):
        monkeypatch.setenv("WOG_TORIC_MAX_CYCLES", "many")
        ToricSettings.reset()
        with pytest.raises(ConfigurationError, match="WOG_TORIC_MAX_CYCLES"):
            get_caps()

    def test_out_of_range(self, monkeypatch):
        monkeypatch.setenv("WOG_TORIC_CAP_GRAVER", "0")
        ToricSettings.reset()
        with pytest.raises(ConfigurationError):
            get_caps()

    def test_update(self):
        ToricSettings().update(groebner_size=7)
        assert get_caps().groebner_size == 7

    def test_explicit_caps_win(self, monkeypatch):
        monkeypatch.setenv("WOG_TORIC_CAP_FIBER", "5")
        ToricSettings.reset()
        assert get_caps(ResourceCaps(fiber_size=9)).fiber_size == 9


class TestOverrideCaps:
    def test_none_values_ignored(self):
        caps = ResourceCaps()
        assert override_caps(caps, fiber_size=None) is caps

    def test_invalid_value(self):
        with pytest.raises(ConfigurationError):
            override_caps(ResourceCaps(), graver_size=-1)
