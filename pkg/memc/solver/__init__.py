"""
Solver Module for the multiway cut system
Exact oracles, max-flow cuts, greedy isolation and simulated annealing
"""

from .report import SolverReport, make_report, report_from_cut, cut_for_bitstring
from .brute_force import brute_force_qubo, brute_force_partition, argmin_lexicographic
from .maxflow import (
    min_cut_k2, greedy_isolation, isolating_cut, max_flow_bfs, ORTOOLS_AVAILABLE
)
from .annealing import AnnealSchedule, default_schedule, simulated_annealing

__all__ = [
    'SolverReport',
    'make_report',
    'report_from_cut',
    'cut_for_bitstring',
    'brute_force_qubo',
    'brute_force_partition',
    'argmin_lexicographic',
    'min_cut_k2',
    'greedy_isolation',
    'isolating_cut',
    'max_flow_bfs',
    'ORTOOLS_AVAILABLE',
    'AnnealSchedule',
    'default_schedule',
    'simulated_annealing'
]
