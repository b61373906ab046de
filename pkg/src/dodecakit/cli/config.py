"""Run configuration from a key=value file."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    solver: str = "builtin"
    workers: int = 1
    prover_budget: int = 100_000
    generator_budget: int = 10_000_000
    epsilon: float = 1e-8
    out_dir: str | None = None
    record_wall_time: bool = False

    def __post_init__(self):
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.prover_budget <= 0 or self.generator_budget <= 0:
            raise ConfigError("budgets must be positive")
        if not 0 < self.epsilon <= 1e-3:
            raise ConfigError("epsilon must lie in (0, 1e-3]")

    def override(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_TYPES = {f.name: f.type for f in fields(Config)}


def _convert(key, raw):
    kind = _TYPES[key]
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "bool":
            if raw.lower() not in ("1", "0", "true", "false", "yes", "no"):
                raise ValueError(raw)
            return raw.lower() in ("1", "true", "yes")
    except ValueError:
        raise ConfigError(f"{key}: cannot read {raw!r} as {kind}") from None
    return raw


def parse_config(text: str) -> Config:
    vals = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"line {lineno}: expected key=value")
        if key not in _TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        vals[key] = _convert(key, value.strip())
    return Config(**vals)


def load_config(path) -> Config:
    return parse_config(Path(path).read_text(encoding="utf-8"))
