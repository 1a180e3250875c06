"""Run configuration: a JSON file with command-line overrides on top."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Mapping, Optional

from .errors import InputError


@dataclass(frozen=True)
class Config:
    problem: str = "FVS"
    r: int = 6  # order of the excluded clique in audits
    t: Optional[int] = None  # defaults to the problem's treewidth bound
    b_max: int = 2
    n_max: int = 6
    width_budget: int = 6
    solve_cap: int = 25
    modulator_cap: int = 25
    tw_exact_cap: int = 14
    seed: int = 0
    cache_dir: Optional[str] = None
    out_dir: str = "."

    def __post_init__(self):
        for name in ("r", "n_max", "width_budget", "solve_cap", "modulator_cap", "tw_exact_cap"):
            if getattr(self, name) <= 0:
                raise InputError(f"config {name} must be positive")
        if self.b_max < 0:
            raise InputError("config b_max must be non-negative")
        if self.b_max > self.n_max:
            raise InputError(f"b_max={self.b_max} exceeds n_max={self.n_max}; no table could hold it")

    def as_dict(self):
        return asdict(self)


def load_config(path=None, overrides: Optional[Mapping] = None) -> Config:
    """File values first, then every override that is not ``None``."""
    data = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise InputError(f"{path}: {e.msg} at line {e.lineno}") from None
        if not isinstance(data, dict):
            raise InputError(f"{path}: config must be a JSON object")
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise InputError(f"unknown config keys {sorted(unknown)}")
    for k, v in (overrides or {}).items():
        if k in known and v is not None:
            data[k] = v
    return Config(**data)
