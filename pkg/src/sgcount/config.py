"""Run configuration: stage caps, precision, budgets, cache location.

A config file is plain ``key = value`` lines (``#`` starts a comment)::

    precision = 80
    derivation_budget = 2000000000
    cache_dir = /tmp/sgcount-cache
    stage_cap.3.2 = 12

The file path is taken from the ``SGCOUNT_CONFIG`` environment variable
unless passed explicitly. Command-line flags override file values.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

CONFIG_ENV = "SGCOUNT_CONFIG"

DEFAULT_STAGE_CAPS = {
    (2, 2): 15,
    (2, 3): 9,
    (2, 4): 7,
    (3, 2): 10,
    (4, 2): 6,
}


def _default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "sgcount"


@dataclass(frozen=True)
class Config:
    precision: int = 50  # significant decimal digits
    derivation_budget: int = 10**9
    vertex_cap: int = 10**7
    edge_cap: int = 30
    cache_dir: Path = field(default_factory=_default_cache_dir)
    use_cache: bool = True
    threads: int | None = None
    stage_caps: dict = field(default_factory=lambda: dict(DEFAULT_STAGE_CAPS))

    def stage_cap(self, d: int, b: int) -> int:
        # unlisted families get a conservative default
        return self.stage_caps.get((d, b), 3)

    def with_overrides(self, **kw) -> "Config":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


_INT_KEYS = ("precision", "derivation_budget", "vertex_cap", "edge_cap", "threads")


def parse_config(text: str) -> Config:
    values: dict = {}
    caps = dict(DEFAULT_STAGE_CAPS)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in _INT_KEYS:
            values[key] = int(value)
        elif key == "cache_dir":
            values[key] = Path(value).expanduser()
        elif key == "use_cache":
            values[key] = value.lower() in ("1", "true", "yes", "on")
        elif key.startswith("stage_cap."):
            _, d, b = key.split(".")
            caps[(int(d), int(b))] = int(value)
        else:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
    return Config(stage_caps=caps, **values)


def load_config(path: str | os.PathLike | None = None) -> Config:
    if path is None:
        path = os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    return parse_config(Path(path).read_text())
