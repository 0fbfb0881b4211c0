"""
QUBO Module for the multiway cut system
Shared cost definition for every backend: QUBO build, Ising form, energies
"""

from .encoding import (
    VariableIndex, DecodeResult, QuboModel, build_qubo, qubo_energy, qubo_energies,
    energy_table, index_bits, lexicographic_rank, decode_bitstring, encode_assignment
)
from .ising import (
    IsingModel, to_ising, from_ising, ising_energy, ising_energies,
    bits_to_spins, spins_to_bits
)
from .io import dumps_qubo, loads_qubo, save_qubo, dumps_ising

__all__ = [
    'VariableIndex',
    'DecodeResult',
    'QuboModel',
    'build_qubo',
    'qubo_energy',
    'qubo_energies',
    'energy_table',
    'index_bits',
    'lexicographic_rank',
    'decode_bitstring',
    'encode_assignment',
    'IsingModel',
    'to_ising',
    'from_ising',
    'ising_energy',
    'ising_energies',
    'bits_to_spins',
    'spins_to_bits',
    'dumps_qubo',
    'loads_qubo',
    'save_qubo',
    'dumps_ising'
]
