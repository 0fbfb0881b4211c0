"""
Photonic Module for the multiway cut system
Fock-state simulation of linear-optical circuits with parity readout
"""

from .fock import (
    FockBasis, FockState, fock_dimension, beam_splitter_matrix, beam_splitter_block,
    apply_beam_splitter, apply_phase_shifter
)
from .circuit import (
    Gate, InterferometerCircuit, build_generic_interferometer, run_circuit,
    dumps_circuit, loads_circuit, save_circuit
)
from .variational import (
    parity_decode, input_photons, default_input_state, ParityCost,
    photonic_expectation, photonic_sample, photonic_optimize, best_feasible
)

__all__ = [
    'FockBasis',
    'FockState',
    'fock_dimension',
    'beam_splitter_matrix',
    'beam_splitter_block',
    'apply_beam_splitter',
    'apply_phase_shifter',
    'Gate',
    'InterferometerCircuit',
    'build_generic_interferometer',
    'run_circuit',
    'dumps_circuit',
    'loads_circuit',
    'save_circuit',
    'parity_decode',
    'input_photons',
    'default_input_state',
    'ParityCost',
    'photonic_expectation',
    'photonic_sample',
    'photonic_optimize',
    'best_feasible'
]
