"""
MEMC Utils Package
Configuration, logging, errors and caching shared by every backend
"""

from .cache import OracleCache, obj_hash
from .config import (
    MEMCConfig, CONFIG, setup_logging,
    format_duration, format_bitstring, parse_bitstring, size_bucket
)
from .errors import (
    MulticutError, ParameterError, ParseError, ValidationError,
    InfeasibleSolutionError, DimensionError, CapacityError
)

__all__ = [
    'OracleCache',
    'obj_hash',
    'MEMCConfig',
    'CONFIG',
    'setup_logging',
    'format_duration',
    'format_bitstring',
    'parse_bitstring',
    'size_bucket',
    'MulticutError',
    'ParameterError',
    'ParseError',
    'ValidationError',
    'InfeasibleSolutionError',
    'DimensionError',
    'CapacityError'
]
