"""Tolerances and switches shared by every module.

A :class:`Config` is a frozen dataclass; override fields with
:func:`dataclasses.replace` or load a JSON file with :func:`load_config`.
"""
from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

CONFIG_ENV_VAR = "KLEINIAN_RP_CONFIG"


@dataclass(frozen=True)
class Config:
    eps_det: float = 1e-10
    eps_eq: float = 1e-10
    eps_im: float = 1e-9
    eps_rot: float = 1e-9        # residual for recognising beta = -4 sin^2(q pi/n)
    n_max: int = 1000
    tol: float = 1e-9            # match_cosh2 acceptance
    p_max: int = 1000
    eps_match: float = 1e-9
    eps_report: float = 1e-6
    eps_realize: float = 1e-10
    eps_cert: float = 1e-8
    eps_eig: float = 1e-9
    m_scan_max: int = 1000       # upper bound when scanning m for semi-fixed rows
    cert_dps: int = 40           # digits for certificates of recognised family points; 0 = double
    p11_index_convention: str = "half"    # "half" -> H[m/2;3,3;2], "full" -> H[m;3,3;2]

    def __post_init__(self) -> None:
        if self.p11_index_convention not in ("half", "full"):
            raise ValueError(
                f"p11_index_convention must be 'half' or 'full', "
                f"got {self.p11_index_convention!r}"
            )

    def as_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def updated(self, **overrides: Any) -> "Config":
        clean = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **clean)


DEFAULT_CONFIG = Config()


def config_from_mapping(data: Mapping[str, Any], base: Config = DEFAULT_CONFIG) -> Config:
    known = {f.name for f in dataclasses.fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return base.updated(**dict(data))


def load_config(path: str | os.PathLike[str] | None = None) -> Config:
    """Read a JSON config file; falls back to $KLEINIAN_RP_CONFIG, then defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is None:
        return DEFAULT_CONFIG
    with Path(path).open(encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must hold a JSON object")
    return config_from_mapping(data)
