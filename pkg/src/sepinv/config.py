"""Run configuration shared by the CLI commands."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field as dc_field
from typing import Optional

from .blocks import DEFAULT_BUDGET
from .galois import MAX_ORBITS

DEFAULT_SEED = 20240611

# SEPINV_BUDGET caps block-monoid enumeration, SEPINV_MAX_ORBITS the number
# of Galois orbits whose stable subsets get enumerated.
ENV_BUDGET = "SEPINV_BUDGET"
ENV_MAX_ORBITS = "SEPINV_MAX_ORBITS"


class ConfigError(ValueError):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not an integer") from None
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


@dataclass
class RunConfig:
    command: str
    group: Optional[str] = None
    field: Optional[str] = None
    max_degree: Optional[int] = None
    degree: Optional[int] = None
    budget: int = DEFAULT_BUDGET
    max_orbits: int = MAX_ORBITS
    workers: int = 1
    out: Optional[str] = None
    seed: int = DEFAULT_SEED
    extra: dict = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.budget <= 0 or self.max_orbits <= 0:
            raise ConfigError("budgets must be positive")
        if self.workers < 1:
            raise ConfigError("--workers must be at least 1")
        for name in ("max_degree", "degree"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"--{name.replace('_', '-')} must be at least 1")

    @classmethod
    def from_env(cls, command: str, **kwargs) -> RunConfig:
        kwargs.setdefault("budget", _env_int(ENV_BUDGET, DEFAULT_BUDGET))
        kwargs.setdefault("max_orbits", _env_int(ENV_MAX_ORBITS, MAX_ORBITS))
        return cls(command=command, **kwargs)

    def echo(self) -> dict:
        """Config as it appears in reports; the output path is left out so reports compare equal."""
        data = asdict(self)
        data.pop("out")
        data.pop("workers")
        data.update(data.pop("extra"))
        return {k: v for k, v in data.items() if v is not None}
