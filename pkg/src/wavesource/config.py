"""JSON experiment configuration."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

from .model import PhysicalConfig, pulse_make, source_from_dict
from .noiselab import DEFAULT_NOISE_NODES


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"config field {field_name!r}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class RunConfig:
    c: float = 0.15
    c0: float = 0.3
    T: float = 12.0
    M: int = 1200
    kappa: float = 1.0
    omega: float = 8.0
    nu: float = 0.2
    N: int = 20
    alpha: float = 0.0
    gamma: float = 0.0
    seed: int = 1
    seeds: tuple[int, ...] | None = None
    source: dict = field(default_factory=lambda: {"variant": "F1"})
    method: str = "spectral"
    oversample: int = 2
    noise_nodes: int = DEFAULT_NOISE_NODES
    smooth_width: float | None = None

    def physical(self) -> PhysicalConfig:
        return PhysicalConfig(c=self.c, c0=self.c0, T=self.T, kappa=self.kappa, M=self.M)

    def pulse(self, omega: float | None = None):
        return pulse_make(self.omega if omega is None else omega, self.nu)

    def source_spec(self):
        return source_from_dict(self.source)

    def seed_list(self, count: int) -> list[int]:
        if self.seeds is not None:
            return list(self.seeds)
        return [self.seed + i for i in range(count)]


_REALS = {"c", "c0", "T", "kappa", "omega", "nu", "alpha", "gamma"}
_INTS = {"M", "N", "seed", "oversample", "noise_nodes"}


def _check(name, ok, message):
    if not ok:
        raise ConfigError(name, message)


def parse_config(doc: dict) -> RunConfig:
    """Validate a decoded JSON document; unknown or ill-typed fields raise ConfigError."""
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "expected a JSON object")
    known = {f.name for f in fields(RunConfig)}
    for name in doc:
        _check(name, name in known, "unknown field")
    kw = {}
    for name, value in doc.items():
        if name in _REALS:
            _check(name, isinstance(value, (int, float)) and not isinstance(value, bool), "expected a number")
            kw[name] = float(value)
        elif name in _INTS:
            _check(name, isinstance(value, int) and not isinstance(value, bool), "expected an integer")
            kw[name] = value
        elif name == "seeds":
            _check(name, isinstance(value, list) and value and all(isinstance(s, int) and s >= 0 for s in value),
                   "expected a non-empty list of non-negative integers")
            kw[name] = tuple(value)
        elif name == "source":
            _check(name, isinstance(value, dict) and "variant" in value, "expected an object with a 'variant'")
            try:
                source_from_dict(value)
            except (ValueError, TypeError, KeyError) as exc:
                raise ConfigError(name, str(exc)) from None
            kw[name] = value
        elif name == "method":
            _check(name, value in ("spectral", "volterra"), "expected 'spectral' or 'volterra'")
            kw[name] = value
        elif name == "smooth_width":
            _check(name, value is None or (isinstance(value, (int, float)) and value >= 0), "expected a number >= 0")
            kw[name] = value if value is None else float(value)
    cfg = RunConfig(**kw)
    for name in ("c", "c0", "T"):
        _check(name, getattr(cfg, name) > 0, "must be positive")
    _check("kappa", cfg.kappa != 0, "must be non-zero")
    _check("M", cfg.M >= 2, "must be >= 2")
    _check("omega", cfg.omega > 0, "must be positive")
    _check("nu", cfg.nu >= 0, "must be non-negative")
    _check("N", cfg.N >= 1, "must be >= 1")
    _check("alpha", cfg.alpha >= 0, "must be non-negative")
    _check("gamma", cfg.gamma >= 0, "must be non-negative")
    _check("seed", cfg.seed >= 0, "must be non-negative")
    _check("oversample", cfg.oversample >= 1, "must be >= 1")
    _check("noise_nodes", cfg.noise_nodes >= 1, "must be >= 1")
    return cfg


def load_config(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON: {exc}") from None
    return parse_config(doc)
