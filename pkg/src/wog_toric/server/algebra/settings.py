"""Resource caps and environment configuration for the toric engine."""

import os
import threading
from typing import Dict, Optional

from pydantic import BaseModel, Field, ValidationError

from .errors import ConfigurationError


class ResourceCaps(BaseModel):
    """Limits that keep every computation at desk scale."""

    model_config = {"frozen": True}

    max_cycles: int = Field(default=10_000, ge=1)
    fiber_size: int = Field(default=1_000_000, ge=1)
    fiber_candidates: int = Field(default=10_000_000, ge=1)
    graver_size: int = Field(default=50_000, ge=1)
    groebner_size: int = Field(default=20_000, ge=1)
    circuit_columns: int = Field(default=24, ge=1)
    order_samples: int = Field(default=200, ge=1)
    order_seed: int = Field(default=0, ge=0)


# Environment variable -> ResourceCaps field
ENV_VARIABLES: Dict[str, str] = {
    "WOG_TORIC_MAX_CYCLES": "max_cycles",
    "WOG_TORIC_CAP_FIBER": "fiber_size",
    "WOG_TORIC_CAP_CANDIDATES": "fiber_candidates",
    "WOG_TORIC_CAP_GRAVER": "graver_size",
    "WOG_TORIC_CAP_GROEBNER": "groebner_size",
    "WOG_TORIC_CIRCUIT_COLUMNS": "circuit_columns",
    "WOG_TORIC_ORDER_SAMPLES": "order_samples",
    "WOG_TORIC_ORDER_SEED": "order_seed",
}


class ToricSettings:
    """Singleton holding the process-wide resource caps."""

    _instance: Optional["ToricSettings"] = None
    _lock = threading.Lock()

    def __new__(cls) -> "ToricSettings":
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        if hasattr(self, "_initialized"):
            return

        self._initialized = True
        self._caps = self._caps_from_environment()

    @staticmethod
    def _caps_from_environment() -> ResourceCaps:
        """Build caps from WOG_TORIC_* variables, defaults elsewhere."""
        overrides: Dict[str, int] = {}
        for variable, field in ENV_VARIABLES.items():
            raw = os.getenv(variable)
            if raw is None or raw.strip() == "":
                continue
            try:
                overrides[field] = int(raw)
            except ValueError:
                raise ConfigurationError(
                    f"{variable} must be an integer, got {raw!r}"
                ) from None

        try:
            return ResourceCaps(**overrides)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid resource caps: {e}") from e

    @property
    def caps(self) -> ResourceCaps:
        return self._caps

    def update(self, **overrides: int) -> ResourceCaps:
        """Replace selected caps for the rest of the process."""
        self._caps = override_caps(self._caps, **overrides)
        return self._caps

    @classmethod
    def reset(cls) -> None:
        """Forget the cached instance so the environment is read again."""
        with cls._lock:
            cls._instance = None


def get_caps(caps: Optional[ResourceCaps] = None) -> ResourceCaps:
    """Return ``caps`` if given, else the process-wide caps."""
    if caps is not None:
        return caps
    return ToricSettings().caps


def override_caps(caps: ResourceCaps, **overrides: Optional[int]) -> ResourceCaps:
    """Return a validated copy of ``caps`` with the non-None overrides applied."""
    values = {key: value for key, value in overrides.items() if value is not None}
    if not values:
        return caps
    try:
        return ResourceCaps(**{**caps.model_dump(), **values})
    except ValidationError as e:
        raise ConfigurationError(f"Invalid resource caps: {e}") from e
