"""
QAOA Module for the multiway cut system
Statevector simulation of QAOA_p with the transverse-field mixer
"""

from .statevector import (
    Statevector, prepare_plus_state, apply_cost_layer, apply_mixer_layer, check_qubits
)
from .qaoa import (
    QaoaParams, QaoaIterationLog, cost_table, qaoa_state, qaoa_expectation,
    qaoa_sample, sample_counts, qaoa_grid_oracle, qaoa_optimize, lowest_sampled
)

__all__ = [
    'Statevector',
    'prepare_plus_state',
    'apply_cost_layer',
    'apply_mixer_layer',
    'check_qubits',
    'QaoaParams',
    'QaoaIterationLog',
    'cost_table',
    'qaoa_state',
    'qaoa_expectation',
    'qaoa_sample',
    'sample_counts',
    'qaoa_grid_oracle',
    'qaoa_optimize',
    'lowest_sampled'
]
