"""Configuration for the dynamic partial sorting engines and harness."""

import os
from dataclasses import dataclass, field
from pathlib import Path

from dotenv import load_dotenv

from .errors import ConfigError

# Load environment variables from .env file in the package directory
env_path = Path(__file__).parent / ".env"
load_dotenv(dotenv_path=env_path)


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be a number, got {raw!r}") from e


@dataclass
class PartialSortConfiguration:
    """Configuration for counters, bounds and fuzz/bench defaults.

    Attributes:
        default_seed (int): Seed used when neither --seed nor DPS_SEED is given.
        ltt_queue_constant (float): C in the LTT psort bound C * log*(n) * k.
        ltt_update_constant (float): K in the LTT changeval/cut/link step bounds.
        fuzz_validate_every (int): Validate after every N-th update (0 = end only).
        new_list_max_fraction (int): New fuzz lists hold at most max_size / this.
        value_range (int): Fuzz/bench values are drawn from [-value_range, value_range].
        log_level (str): Default logging level name.
    """

    default_seed: int = 1
    ltt_queue_constant: float = field(
        default_factory=lambda: _env_float("DPS_LTT_QUEUE_C", 8.0)
    )
    ltt_update_constant: float = field(
        default_factory=lambda: _env_float("DPS_LTT_UPDATE_K", 32.0)
    )
    fuzz_validate_every: int = 0
    new_list_max_fraction: int = 4
    value_range: int = 10**9
    log_level: str = field(
        default_factory=lambda: os.getenv("DPS_LOG_LEVEL", "WARNING")
    )


def seed_override() -> int | None:
    """Return the DPS_SEED override, or None when unset."""
    raw = os.getenv("DPS_SEED")
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw, 0)
    except ValueError as e:
        raise ConfigError(f"DPS_SEED must be an integer, got {raw!r}") from e


config = PartialSortConfiguration()
