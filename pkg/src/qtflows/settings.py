from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, PositiveInt, ValidationError

from .errors import ConfigurationError

logger = logging.getLogger(__name__)

BUDGETS_PATH = Path(__file__).parent / "config" / "budgets.yaml"


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True)

    profile: str = Field(..., description="Name of the budgets.yaml profile in use")
    n_max: PositiveInt = Field(..., description="Largest n scanned by default")
    a_max: PositiveInt = Field(3, description="Largest netflow entry sampled")
    seed: int = Field(2024, description="Seed for random netflow samples")
    samples: PositiveInt = Field(50, description="Number of random (beta, a) samples")
    sample_n_max: PositiveInt = Field(5, description="Largest n used for random samples")
    exhaustive_max_entry: PositiveInt = Field(2, description="Exhaustive mode: largest netflow entry")
    exhaustive_max_n: PositiveInt = Field(4, description="Exhaustive mode: largest n")
    tutte_max_vertices: PositiveInt = Field(10, description="Canonical Tutte keys up to this many vertices")
    tutte_max_relabelings: PositiveInt = Field(5040, description="Relabelings tried per canonical key")
    workers: PositiveInt = Field(1, description="Worker processes for scans and Ehrhart sums")


def _read_budgets(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return yaml.safe_load(fh) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigurationError(f"cannot read budgets from {path}: {e}") from e


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from None


def load_settings(profile: Optional[str] = None, path: Optional[Path] = None) -> Settings:
    """Profile from budgets.yaml, then QTFLOWS_* environment overrides (a .env file is honored)."""
    load_dotenv()
    budgets = _read_budgets(path or BUDGETS_PATH)
    profiles = budgets.get("profiles", {})
    name = profile or os.environ.get("QTFLOWS_PROFILE") or budgets.get("default_profile", "ci")
    if name not in profiles:
        raise ConfigurationError(f"unknown profile {name!r}; known: {sorted(profiles)}")
    values = dict(profiles[name], profile=name)
    for key, env in (("n_max", "QTFLOWS_SCAN_NMAX"), ("workers", "QTFLOWS_WORKERS")):
        override = _env_int(env)
        if override is not None:
            values[key] = override
    try:
        settings = Settings(**values)
    except ValidationError as e:
        raise ConfigurationError(f"invalid settings for profile {name!r}: {e}") from e
    logger.debug("settings: %s", settings.model_dump())
    return settings
