"""
MEMC Module
Minimum edge multiway cut: QUBO encoding, classical baselines, QAOA and photonic simulators
"""

# Versión del módulo
__version__ = "1.0.0"

# Importaciones principales
from .instances import (
    MulticutInstance, CutSolution, validate_solution, generate_random_instance,
    generate_family, load_instance, save_instance, toy3, toy4
)
from .qubo import QuboModel, build_qubo, qubo_energy, energy_table, to_ising, ising_energy
from .solver import (
    SolverReport, brute_force_qubo, brute_force_partition, min_cut_k2,
    greedy_isolation, simulated_annealing
)
from .qaoa import QaoaParams, qaoa_expectation, qaoa_optimize
from .photonic import build_generic_interferometer, run_circuit, photonic_optimize
from .optim import OptimizerConfig, nelder_mead, grid_scan, random_search
from .bench import BenchmarkConfig, run_suite, summarize
from .system import BACKENDS, MulticutSystem
from .utils import CONFIG, setup_logging

# Alias de la fachada principal
System = MulticutSystem

__all__ = [
    '__version__',
    'MulticutInstance',
    'CutSolution',
    'validate_solution',
    'generate_random_instance',
    'generate_family',
    'load_instance',
    'save_instance',
    'toy3',
    'toy4',
    'QuboModel',
    'build_qubo',
    'qubo_energy',
    'energy_table',
    'to_ising',
    'ising_energy',
    'SolverReport',
    'brute_force_qubo',
    'brute_force_partition',
    'min_cut_k2',
    'greedy_isolation',
    'simulated_annealing',
    'QaoaParams',
    'qaoa_expectation',
    'qaoa_optimize',
    'build_generic_interferometer',
    'run_circuit',
    'photonic_optimize',
    'OptimizerConfig',
    'nelder_mead',
    'grid_scan',
    'random_search',
    'BenchmarkConfig',
    'run_suite',
    'summarize',
    'BACKENDS',
    'MulticutSystem',
    'System',
    'CONFIG',
    'setup_logging'
]
