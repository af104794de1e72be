"""Runtime configuration: a validated key=value text file plus flag overrides.

Recognized keys (defaults in parentheses):

    max_order       highest n-gram order, 1..4          (4)
    gate_threshold  script-gate ratio threshold          (0.3)
    gate_in_kn      apply the gate before KN scoring     (false)
    prior_init      initial per-language prior count     (1)
    ui_boost        UI-language prior count increase     (7)
    dict_fpr        bloom filter target false-pos rate   (0.01)
    seed            fold/split seed                      (13)
    wordlists_dir   directory of <code>.txt word lists   (bundled)

Unknown keys are rejected.  Lines starting with ``#`` and blank lines are
ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path


class ConfigError(Exception):
    """Raised for unknown keys or unparseable values."""


@dataclass
class Config:
    max_order: int = 4
    gate_threshold: float = 0.3
    gate_in_kn: bool = False
    prior_init: float = 1.0
    ui_boost: float = 7.0
    dict_fpr: float = 0.01
    seed: int = 13
    wordlists_dir: str | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.max_order <= 4:
            raise ConfigError(f"max_order must be in 1..4, got {self.max_order}")
        if not 0 < self.gate_threshold < 1:
            raise ConfigError(f"gate_threshold must be in (0, 1), got {self.gate_threshold}")
        if self.prior_init <= 0:
            raise ConfigError(f"prior_init must be positive, got {self.prior_init}")
        if self.ui_boost < 0:
            raise ConfigError(f"ui_boost must be non-negative, got {self.ui_boost}")
        if not 0 < self.dict_fpr < 0.5:
            raise ConfigError(f"dict_fpr must be in (0, 0.5), got {self.dict_fpr}")


_BOOL_VALUES = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


def _coerce(name: str, raw: str):
    raw = raw.strip()
    try:
        if name == "gate_in_kn":
            return _BOOL_VALUES[raw.lower()]
        if name in ("max_order", "seed"):
            return int(raw)
        if name == "wordlists_dir":
            return raw or None
        return float(raw)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc


def load_config(path: str | Path) -> Config:
    """Parse a key=value config file."""
    known = {f.name for f in fields(Config)}
    values: dict[str, object] = {}
    for line_num, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_num}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in known:
            raise ConfigError(f"line {line_num}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    return Config(**values)  # type: ignore[arg-type]
