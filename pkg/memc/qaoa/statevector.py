"""
Dense statevector layers for QAOA
Basis index b encodes the bitstring with x_i = bit i of b
"""
from dataclasses import dataclass

import numpy as np

from ..utils.config import CONFIG
from ..utils.errors import CapacityError, DimensionError, ParameterError


@dataclass
class Statevector:
    """Complex amplitudes over the 2^n computational basis"""
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        size = self.amplitudes.shape[0]
        if size < 2 or size & (size - 1):
            raise DimensionError(f"Statevector length {size} is not a power of two >= 2")

    @property
    def num_qubits(self) -> int:
        return int(self.amplitudes.shape[0]).bit_length() - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> "Statevector":
        return Statevector(self.amplitudes.copy())


def check_qubits(n: int) -> None:
    """
    Raises:
        ParameterError: n < 1
        CapacityError: n above CONFIG.QAOA_MAX_QUBITS
    """
    if n < 1:
        raise ParameterError(f"Need at least one qubit, got {n}")
    if n > CONFIG.QAOA_MAX_QUBITS:
        raise CapacityError(f"{n} qubits exceed the statevector cap {CONFIG.QAOA_MAX_QUBITS}")


def prepare_plus_state(n: int) -> Statevector:
    """|+>^n: every amplitude 2^(-n/2)"""
    check_qubits(n)
    dim = 1 << n
    return Statevector(np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128))


def apply_cost_layer(state: Statevector, energies: np.ndarray, gamma: float) -> Statevector:
    """Multiply amplitude b by exp(-i gamma E_b)"""
    energies = np.asarray(energies, dtype=float)
    if energies.shape[0] != state.amplitudes.shape[0]:
        raise DimensionError(
            f"Energy table has {energies.shape[0]} entries, state has {state.amplitudes.shape[0]}"
        )
    return Statevector(state.amplitudes * np.exp(-1j * gamma * energies))


def apply_mixer_layer(state: Statevector, beta: float, order=None) -> Statevector:
    """
    exp(-i beta X) on every qubit, ascending unless an explicit order is given.

    On the (2,)*n tensor view qubit i is axis n-1-i; the rotation mixes each
    amplitude with its partner across that axis.
    """
    n = state.num_qubits
    c, s = np.cos(beta), -1j * np.sin(beta)
    psi = state.amplitudes.reshape((2,) * n)
    for i in (range(n) if order is None else order):
        psi = c * psi + s * np.flip(psi, axis=n - 1 - i)
    return Statevector(psi.reshape(-1))
