"""
Instances Module for the multiway cut system
Graph model, random families, toy fixtures and text IO
"""

from .model import (
    MulticutInstance, CutSolution, validate_solution, separates_terminals, edge_key
)
from .generator import (
    generate_random_instance, generate_family, edges_for_density,
    parse_instance_id, toy3, toy4
)
from .io import load_instance, save_instance, loads_instance, dumps_instance

__all__ = [
    'MulticutInstance',
    'CutSolution',
    'validate_solution',
    'separates_terminals',
    'edge_key',
    'generate_random_instance',
    'generate_family',
    'edges_for_density',
    'parse_instance_id',
    'toy3',
    'toy4',
    'load_instance',
    'save_instance',
    'loads_instance',
    'dumps_instance'
]
