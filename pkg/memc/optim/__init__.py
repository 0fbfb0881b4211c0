"""
Optim Module for the multiway cut system
Derivative-free optimizers shared by the QAOA and photonic backends
"""

from .trace import (
    OptimizerConfig, OptimizerTrace, OptimizerResult, TraceEntry, TracedObjective, METHODS
)
from .nelder_mead import nelder_mead
from .search import grid_scan, random_search, minimize, compare_optimizers, grids_from_bounds

__all__ = [
    'OptimizerConfig',
    'OptimizerTrace',
    'OptimizerResult',
    'TraceEntry',
    'TracedObjective',
    'METHODS',
    'nelder_mead',
    'grid_scan',
    'random_search',
    'minimize',
    'compare_optimizers',
    'grids_from_bounds'
]
