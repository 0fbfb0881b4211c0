"""
Ising form of a QUBO
Spin substitution x = (1 - z) / 2 with couplings, fields and an explicit offset
"""
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from .encoding import QuboModel
from ..utils.errors import DimensionError, ParameterError


@dataclass(frozen=True)
class IsingModel:
    """Couplings J (i < j), fields h and a constant offset

    ising_energy(z) + offset equals the QUBO energy of x = (1 - z) / 2; read as a
    diagonal Hamiltonian, basis state |x> has the QUBO energy as eigenvalue.
    """
    size: int
    couplings: Dict[Tuple[int, int], float]
    fields: Dict[int, float]
    offset: float = 0.0

    def __post_init__(self):
        for (i, j) in self.couplings:
            if not (0 <= i < j < self.size):
                raise ParameterError(f"Coupling key ({i}, {j}) violates 0 <= i < j < {self.size}")
        for i in self.fields:
            if not 0 <= i < self.size:
                raise ParameterError(f"Field index {i} outside 0..{self.size - 1}")


def bits_to_spins(bits: Sequence[int]) -> np.ndarray:
    return 1 - 2 * np.asarray(bits, dtype=int)


def spins_to_bits(spins: Sequence[int]) -> np.ndarray:
    return ((1 - np.asarray(spins, dtype=int)) // 2).astype(int)


def to_ising(model: QuboModel) -> IsingModel:
    """
    Map a QUBO to Ising form.

    J_ij = Q_ij / 4 for i < j, h_i = -(1/4) sum_j (Q_ij + Q_ji) with the diagonal
    counted twice (Q_ii / 2), offset = sum_{i<j} Q_ij / 4 + sum_i Q_ii / 2 + constant.
    """
    couplings: Dict[Tuple[int, int], float] = {}
    fields: Dict[int, float] = defaultdict(float)
    offset = model.constant

    for i, j, q in model.terms:
        if i == j:
            fields[i] -= q / 2.0
            offset += q / 2.0
        else:
            couplings[(i, j)] = q / 4.0
            fields[i] -= q / 4.0
            fields[j] -= q / 4.0
            offset += q / 4.0

    return IsingModel(
        model.size,
        couplings,
        {i: h for i, h in sorted(fields.items()) if h != 0.0},
        offset,
    )


def from_ising(ising: IsingModel) -> QuboModel:
    """Inverse mapping z = 1 - 2x back to a generic QUBO"""
    coefficients: Dict[Tuple[int, int], float] = defaultdict(float)
    constant = ising.offset

    for (i, j), coupling in ising.couplings.items():
        coefficients[(i, j)] += 4.0 * coupling
        coefficients[(i, i)] -= 2.0 * coupling
        coefficients[(j, j)] -= 2.0 * coupling
        constant += coupling
    for i, h in ising.fields.items():
        coefficients[(i, i)] -= 2.0 * h
        constant += h

    return QuboModel.from_coefficients(ising.size, coefficients, constant)


def ising_energy(ising: IsingModel, spins: Sequence[int]) -> float:
    """
    sum_{i<j} J_ij z_i z_j + sum_i h_i z_i (offset not included).

    Raises:
        DimensionError: Length mismatch
    """
    z = np.asarray(spins, dtype=int).ravel()
    if z.shape[0] != ising.size:
        raise DimensionError(f"Spin vector has length {z.shape[0]}, model has {ising.size} spins")
    energy = 0.0
    for (i, j), coupling in sorted(ising.couplings.items()):
        energy += coupling * z[i] * z[j]
    for i, h in sorted(ising.fields.items()):
        energy += h * z[i]
    return float(energy)


def ising_energies(ising: IsingModel, spins: np.ndarray) -> np.ndarray:
    """Vectorized ising_energy over a (rows x N) batch of spin vectors"""
    z = np.atleast_2d(np.asarray(spins, dtype=float))
    if z.shape[1] != ising.size:
        raise DimensionError(f"Batch has {z.shape[1]} columns, model has {ising.size} spins")
    energies = np.zeros(z.shape[0])
    for (i, j), coupling in ising.couplings.items():
        energies += coupling * z[:, i] * z[:, j]
    for i, h in ising.fields.items():
        energies += h * z[:, i]
    return energies
