"""Scenario configuration: declarative key-value files plus flag overrides.

A config file is plain text, one ``key = value`` per line, ``#`` comments
allowed; list values are comma separated.  Command-line flags win over file
values, which win over defaults, so a committed config file plus the command
line fully determines a run.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .model import CavityRegime, ModelParams

__all__ = ["ConfigError", "ScenarioConfig", "parse_config_file", "build_config"]

REGIMES = ("good", "bad", "custom")


class ConfigError(ValueError):
    """A configuration key is missing, malformed, or out of range."""


@dataclass(frozen=True)
class ScenarioConfig:
    """Resolved settings for one CLI run (all rates in units of lam)."""

    regime: tuple[str, ...] = ("good",)
    gamma_over_lambda: float | None = None   # required iff regime is custom
    g_over_lambda: tuple[float, ...] = (1.0,)
    t_max_lambda: float = 20.0
    n_grid: int = 4001
    n_samples: int = 500
    seed: int = 42
    out: str | None = None
    # oracle-validation knobs
    n_modes: int = 2000
    window_halfwidth_lambda: float = 50.0
    oracle_step_lambda: float | None = None

    def __post_init__(self) -> None:
        if not self.regime or any(r not in REGIMES for r in self.regime):
            raise ConfigError(f"regime must be one of {REGIMES}, got {self.regime}")
        if "custom" in self.regime and self.gamma_over_lambda is None:
            raise ConfigError("custom regime needs gamma_over_lambda")
        if self.gamma_over_lambda is not None and self.gamma_over_lambda < 0:
            raise ConfigError("gamma_over_lambda must be nonnegative")
        if any(g < 0 for g in self.g_over_lambda):
            raise ConfigError("g_over_lambda entries must be nonnegative")
        if list(self.g_over_lambda) != sorted(self.g_over_lambda):
            raise ConfigError("g_over_lambda list must be sorted ascending")
        if self.t_max_lambda <= 0:
            raise ConfigError("t_max_lambda must be positive")
        if self.n_grid < 2:
            raise ConfigError("n_grid must be at least 2")
        if self.n_samples < 1:
            raise ConfigError("n_samples must be at least 1")
        if self.n_modes < 100:
            raise ConfigError("n_modes must be at least 100")
        if self.window_halfwidth_lambda < 20:
            raise ConfigError("window_halfwidth_lambda must be at least 20")
        if self.oracle_step_lambda is not None and self.oracle_step_lambda <= 0:
            raise ConfigError("oracle_step_lambda must be positive")

    def regimes(self) -> list[CavityRegime]:
        out = []
        for tag in self.regime:
            if tag == "custom":
                out.append(CavityRegime.custom(self.gamma_over_lambda))
            else:
                out.append(CavityRegime.good() if tag == "good" else CavityRegime.bad())
        return out

    def params_for(self, regime: CavityRegime, g: float) -> ModelParams:
        return regime.params(g=g, lam=1.0)

    def header_items(self) -> list[tuple[str, str]]:
        """Stable key/value listing of the resolved config for file headers."""
        items: list[tuple[str, str]] = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                text = ", ".join(str(v) for v in value)
            else:
                text = str(value)
            items.append((f.name, text))
        return items


def _parse_scalar(key: str, text: str, kind):
    try:
        return kind(text)
    except ValueError as exc:
        raise ConfigError(f"{key}: cannot parse {text!r}") from exc


def _parse_float_list(key: str, text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(_parse_scalar(key, part.strip(), float) for part in text.split(","))


def parse_config_file(path: str) -> dict[str, str]:
    """Read ``key = value`` lines; later occurrences override earlier ones."""
    raw: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = stripped.split("=", 1)
            raw[key.strip()] = value.strip()
    return raw


def build_config(file_values: dict[str, str] | None = None,
                 overrides: dict[str, object] | None = None) -> ScenarioConfig:
    """Merge defaults, config-file values, and flag overrides (flags win)."""
    values: dict[str, object] = {}
    for key, text in (file_values or {}).items():
        if key == "regime":
            values["regime"] = tuple(part.strip() for part in text.split(","))
        elif key == "gamma_over_lambda":
            values[key] = _parse_scalar(key, text, float)
        elif key == "g_over_lambda":
            values[key] = _parse_float_list(key, text)
        elif key in ("t_max_lambda", "window_halfwidth_lambda", "oracle_step_lambda"):
            values[key] = _parse_scalar(key, text, float)
        elif key in ("n_grid", "n_samples", "seed", "n_modes"):
            values[key] = _parse_scalar(key, text, int)
        elif key == "out":
            values[key] = text
        else:
            raise ConfigError(f"unknown config key {key!r}")
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    try:
        return ScenarioConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
