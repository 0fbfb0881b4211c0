"""
Configuration and utility functions for the multiway cut system
Defaults, capacity caps, logging setup and small formatting helpers
"""
import os
import math
import logging
from typing import Dict, Optional
from dataclasses import dataclass, field

try:
    from dotenv import load_dotenv
    load_dotenv()
    DOTENV_AVAILABLE = True
except ImportError:
    DOTENV_AVAILABLE = False


def _env_bool(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


# Multiway cut configuration
@dataclass
class MEMCConfig:
    """Multiway cut system configuration"""

    # Capacity caps
    BRUTE_FORCE_MAX_VARIABLES: int = 26
    PARTITION_MAX_ASSIGNMENTS: int = 2 ** 20
    QAOA_MAX_QUBITS: int = 24
    FOCK_MAX_BASIS: int = 2_000_000
    GRID_MAX_POINTS: int = 1_000_000
    ENERGY_TABLE_CHUNK: int = 2 ** 20

    # Simulated annealing
    SA_FINAL_TEMPERATURE: float = 1e-2
    SA_SWEEPS: int = 1000
    SA_READS: int = 100
    SA_READS_PER_WORKER: int = 25

    # QAOA
    QAOA_SHOTS: int = 4000
    QAOA_GRID_POINTS: int = 64
    QAOA_GAMMA0: float = math.pi / 4
    QAOA_BETA0: float = math.pi / 2
    QAOA_MAX_EVALUATIONS: int = 1000

    # Photonic
    PHOTONIC_SHOTS: int = 10000
    PHOTONIC_MAX_EVALUATIONS: int = 1500

    # Optimizers
    OPTIM_TOLERANCE: float = 1e-8

    # Numerical tolerances
    ENERGY_TOL: float = 1e-9
    FLOW_TOL: float = 1e-9

    # Runtime
    MAX_WORKERS: int = 4
    CACHE_ENABLED: bool = True
    CACHE_DIR: str = ".memc_cache"
    LOG_LEVEL: str = "INFO"

    # Bench size buckets (|V| upper bound -> label)
    SIZE_BUCKETS: Dict[str, int] = field(default_factory=lambda: {"small": 10})

    def __post_init__(self):
        self.LOG_LEVEL = os.getenv("MEMC_LOG_LEVEL", self.LOG_LEVEL)
        self.CACHE_DIR = os.getenv("MEMC_CACHE_DIR", self.CACHE_DIR)
        self.MAX_WORKERS = int(os.getenv("MEMC_MAX_WORKERS", self.MAX_WORKERS))
        self.CACHE_ENABLED = _env_bool("MEMC_CACHE_ENABLED", self.CACHE_ENABLED)


# Global configuration instance
CONFIG = MEMCConfig()


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """Setup logging for the multiway cut system

    Args:
        level: Logging level (defaults to CONFIG.LOG_LEVEL)

    Returns:
        Configured logger
    """
    logging.basicConfig(
        level=getattr(logging, (level or CONFIG.LOG_LEVEL).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    logger = logging.getLogger('memc')
    return logger


def format_duration(seconds: float) -> str:
    """Format a wall time in human-readable form

    Args:
        seconds: Duration in seconds

    Returns:
        Formatted duration string
    """
    if seconds < 1:
        return f"{seconds * 1000:.1f}ms"
    elif seconds < 60:
        return f"{seconds:.2f}s"
    else:
        minutes = int(seconds // 60)
        return f"{minutes}m {seconds - 60 * minutes:.0f}s"


def format_bitstring(bits) -> str:
    """Render a bit vector as a string, x_0 first"""
    return "".join(str(int(b)) for b in bits)


def parse_bitstring(text: str):
    """Inverse of format_bitstring"""
    from .errors import ParameterError

    if any(ch not in "01" for ch in text):
        raise ParameterError(f"Invalid bitstring '{text}'")
    return tuple(int(ch) for ch in text)


def size_bucket(num_vertices: int) -> str:
    """Bucket label used by bench summaries"""
    for label, upper in sorted(CONFIG.SIZE_BUCKETS.items(), key=lambda kv: kv[1]):
        if num_vertices <= upper:
            return label
    return "large"
