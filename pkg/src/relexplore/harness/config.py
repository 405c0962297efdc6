"""Experiment configuration, read from YAML."""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Optional, Union

import yaml

METHODS = ("glib_l2", "oracle_bfs", "oracle_pt_demos", "glib_l2_demos", "oracle_bfs_demos", "random")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    """One run.  ``None`` budget, interval and horizon take the bundle's defaults."""

    domain: str
    method: str
    seed: int = 0
    budget: Optional[int] = None
    eval_interval: Optional[int] = None
    horizon: Optional[int] = None
    babble_attempts: int = 10
    planner_expansions: int = 2_000  # per test task at evaluation time
    output_dir: str = "runs"

    @property
    def uses_demos(self) -> bool:
        return self.method.endswith("_demos")

    def validate(self) -> "ExperimentConfig":
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; expected one of {', '.join(METHODS)}")
        for name in ("budget", "eval_interval", "horizon"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.budget is not None and self.eval_interval is not None and self.eval_interval > self.budget:
            raise ConfigError("eval_interval must not exceed budget")
        if self.babble_attempts < 1 or self.planner_expansions < 1:
            raise ConfigError("babble_attempts and planner_expansions must be positive")
        return self

    def resolved(self, bundle) -> "ExperimentConfig":
        """Fill unset values from the bundle manifest."""
        return replace(
            self,
            budget=self.budget or bundle.budget,
            eval_interval=self.eval_interval or bundle.eval_interval,
            horizon=self.horizon or bundle.horizon,
        ).validate()

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        for key in ("domain", "method"):
            if key not in data:
                raise ConfigError(f"missing config key {key!r}")
        return cls(**data).validate()

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ExperimentConfig":
        data = yaml.safe_load(Path(path).read_text())
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a mapping of config keys")
        return cls.from_dict(data)
