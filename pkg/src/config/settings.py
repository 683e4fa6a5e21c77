"""
⚙️ POLYMAX CONFIGURATION SETTINGS
Main configuration for the polygon intersection toolkit
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

from dotenv import load_dotenv

load_dotenv()

PROJECT_ROOT = Path(__file__).parent.parent.parent
LOGS_DIR = PROJECT_ROOT / "logs"
OUTPUT_DIR = PROJECT_ROOT / "output"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw.replace("_", ""))


@dataclass
class Config:
    """Main configuration class for polymax"""

    # Project paths
    PROJECT_ROOT: Path = PROJECT_ROOT
    LOGS_DIR: Path = LOGS_DIR
    OUTPUT_DIR: Path = OUTPUT_DIR

    # General position repair
    PERTURBATION_MAGNITUDE: Fraction = Fraction(1, 2**20)
    PERTURBATION_RETRIES: int = 64
    PERTURBATION_STEPS: int = 1024  # offsets are multiples of magnitude / steps

    # Constructions
    COMB_G_FRACTION: Fraction = Fraction(9, 10)
    ZIGZAG_SPIKE_HEIGHT: Fraction = Fraction(10)
    ZIGZAG_EPSILON_RATIO: Fraction = Fraction(1, 10)
    STAR_TAN_DENOMINATOR: int = 10**6
    STAR_OFFSET_RETRIES: int = 8

    # Search oracle
    SEARCH_BUDGET: int = field(default_factory=lambda: _env_int("POLYMAX_BUDGET", 10**8))
    SAMPLING_BUDGET: int = 10_000
    HILL_CLIMB_PATIENCE: int = 1000
    SEARCH_PROGRESS: bool = False

    # Rendering
    SVG_WIDTH: int = 800
    SVG_HEIGHT: int = 800
    SVG_MARGIN: int = 40
    SVG_DECIMALS: int = 3

    # Logging Settings
    LOG_LEVEL: str = field(default_factory=lambda: os.getenv("POLYMAX_LOG_LEVEL", "WARNING"))
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_TO_FILE: bool = False

    def __post_init__(self):
        """Validate configuration"""
        if self.PERTURBATION_MAGNITUDE <= 0:
            raise ValueError("PERTURBATION_MAGNITUDE must be positive")
        if not 0 < self.COMB_G_FRACTION < 1:
            raise ValueError("COMB_G_FRACTION must lie strictly between 0 and 1")
        if not 0 < self.ZIGZAG_EPSILON_RATIO < 1:
            raise ValueError("ZIGZAG_EPSILON_RATIO must lie strictly between 0 and 1")
        if self.SEARCH_BUDGET <= 0:
            raise ValueError("SEARCH_BUDGET must be positive")


# Runtime settings shared by logging and the command-line front end
SYSTEM_CONFIG: Dict[str, Any] = {
    "name": "polymax",
    "version": "1.0.0",
    "log_file_max_size": 10 * 1024 * 1024,  # 10MB
    "log_backup_count": 5,
    "format_version": 1,
}

# Named override sets
PROFILES: Dict[str, Dict[str, Any]] = {
    "desk": {},
    "thorough": {
        "PERTURBATION_RETRIES": 256,
        "SAMPLING_BUDGET": 100_000,
        "HILL_CLIMB_PATIENCE": 5000,
        "SEARCH_PROGRESS": True,
    },
}

_active = Config()


def get_config(profile: str = "desk") -> Config:
    """
    Get configuration for a named profile

    Args:
        profile: Profile name ("desk", "thorough")

    Returns:
        Config instance with the profile overrides applied
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile: {profile}")
    if profile == "desk":
        return _active
    values = {**_active.__dict__, **PROFILES[profile]}
    return Config(**values)


def update_config(updates: Dict[str, Any]) -> Config:
    """
    Update the active configuration at runtime

    Args:
        updates: Mapping of Config field names to new values

    Returns:
        The new active Config
    """
    global _active
    unknown = set(updates) - set(_active.__dict__)
    if unknown:
        raise ValueError(f"unknown settings: {', '.join(sorted(unknown))}")
    _active = Config(**{**_active.__dict__, **updates})
    return _active
