"""
Fock-state simulation of passive linear optics
Fixed photon-number basis, beam splitter blocks and phase shifters
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np
from scipy.special import comb

from ..utils.config import CONFIG
from ..utils.errors import CapacityError, DimensionError, ParameterError

Occupation = Tuple[int, ...]


def fock_dimension(modes: int, photons: int) -> int:
    """C(M + P - 1, P)"""
    return int(comb(modes + photons - 1, photons, exact=True))


def _occupations(modes: int, photons: int) -> Iterator[Occupation]:
    """Every occupation vector with the given total, lexicographically descending"""
    if modes == 1:
        yield (photons,)
        return
    for first in range(photons, -1, -1):
        for rest in _occupations(modes - 1, photons - first):
            yield (first,) + rest


@dataclass(eq=False)
class FockBasis:
    """Ordered photon-number basis for M modes and P photons"""
    modes: int
    photons: int
    states: np.ndarray = field(init=False, repr=False)
    _index: Dict[Occupation, int] = field(init=False, repr=False)
    _pair_groups: Dict[Tuple[int, int], Dict[int, np.ndarray]] = field(init=False, repr=False)

    def __post_init__(self):
        if self.modes < 1:
            raise ParameterError(f"Need at least one mode, got {self.modes}")
        if self.photons < 0:
            raise ParameterError(f"Photon number must be >= 0, got {self.photons}")
        size = fock_dimension(self.modes, self.photons)
        if size > CONFIG.FOCK_MAX_BASIS:
            raise CapacityError(
                f"Fock basis of {self.modes} modes / {self.photons} photons has {size} states, "
                f"cap is {CONFIG.FOCK_MAX_BASIS}"
            )
        occupations = list(_occupations(self.modes, self.photons))
        self.states = np.array(occupations, dtype=np.int64).reshape(size, self.modes)
        self._index = {occ: i for i, occ in enumerate(occupations)}
        self._pair_groups = {}

    @property
    def size(self) -> int:
        return self.states.shape[0]

    def index(self, occupation: Sequence[int]) -> int:
        key = tuple(int(n) for n in occupation)
        try:
            return self._index[key]
        except KeyError:
            raise DimensionError(
                f"Occupation {key} is not in the basis of {self.modes} modes / {self.photons} photons"
            )

    def occupation(self, i: int) -> Occupation:
        return tuple(int(n) for n in self.states[i])

    def pair_groups(self, p: int, q: int) -> Dict[int, np.ndarray]:
        """
        For each pair total N, a (groups x N+1) index array; row g lists the basis
        states sharing the occupations outside {p, q}, column m having n_p = m.
        """
        self.check_mode(p)
        self.check_mode(q)
        if p == q:
            raise ParameterError(f"Beam splitter needs two distinct modes, got ({p}, {q})")
        key = (p, q)
        if key not in self._pair_groups:
            totals = self.states[:, p] + self.states[:, q]
            anchors = np.flatnonzero(self.states[:, q] == 0)
            rows: Dict[int, List[List[int]]] = {}
            for a in anchors:
                total = int(totals[a])
                occupation = self.states[a].copy()
                row = []
                for m in range(total + 1):
                    occupation[p], occupation[q] = m, total - m
                    row.append(self._index[tuple(int(n) for n in occupation)])
                rows.setdefault(total, []).append(row)
            self._pair_groups[key] = {
                total: np.array(r, dtype=np.int64) for total, r in sorted(rows.items())
            }
        return self._pair_groups[key]

    def check_mode(self, j: int) -> None:
        if not 0 <= j < self.modes:
            raise ParameterError(f"Mode {j} outside 0..{self.modes - 1}")


@dataclass(eq=False)
class FockState:
    """Amplitudes over a FockBasis"""
    basis: FockBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if self.amplitudes.shape[0] != self.basis.size:
            raise DimensionError(
                f"{self.amplitudes.shape[0]} amplitudes for a basis of {self.basis.size} states"
            )

    @classmethod
    def basis_state(cls, basis: FockBasis, occupation: Sequence[int]) -> "FockState":
        amplitudes = np.zeros(basis.size, dtype=np.complex128)
        amplitudes[basis.index(occupation)] = 1.0
        return cls(basis, amplitudes)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def amplitude(self, occupation: Sequence[int]) -> complex:
        return complex(self.amplitudes[self.basis.index(occupation)])

    def probability(self, occupation: Sequence[int]) -> float:
        return abs(self.amplitude(occupation)) ** 2


def beam_splitter_matrix(theta: float, phi: float) -> np.ndarray:
    """Mode matrix [[cos, -e^{i phi} sin], [e^{-i phi} sin, cos]] (output x input)"""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([
        [c, -np.exp(1j * phi) * s],
        [np.exp(-1j * phi) * s, c],
    ])


@lru_cache(maxsize=4096)
def beam_splitter_block(total: int, theta: float, phi: float) -> np.ndarray:
    """
    (N+1) x (N+1) action of a beam splitter on the pair states |n, N-n>.

    Entry [m, n] is the amplitude of |m, N-m> produced from |n, N-n>, obtained by
    substituting a_p -> cos a_p + e^{-i phi} sin a_q and
    a_q -> -e^{i phi} sin a_p + cos a_q into the creation operators.
    """
    c = math.cos(theta)
    s_pq = np.exp(-1j * phi) * math.sin(theta)
    s_qp = -np.exp(1j * phi) * math.sin(theta)
    factorial = [math.factorial(i) for i in range(total + 1)]
    block = np.zeros((total + 1, total + 1), dtype=np.complex128)
    for n in range(total + 1):
        rest = total - n
        norm_in = math.sqrt(factorial[n] * factorial[rest])
        for k in range(n + 1):
            a = comb(n, k, exact=True) * c ** k * s_pq ** (n - k)
            for l in range(rest + 1):
                b = comb(rest, l, exact=True) * s_qp ** l * c ** (rest - l)
                m = k + l
                block[m, n] += a * b * math.sqrt(factorial[m] * factorial[total - m]) / norm_in
    block.setflags(write=False)
    return block


def apply_beam_splitter(state: FockState, pair: Tuple[int, int], theta: float,
                        phi: float) -> FockState:
    """Beam splitter on modes (p, q); photon number is conserved within each group"""
    p, q = pair
    groups = state.basis.pair_groups(p, q)
    out = np.empty_like(state.amplitudes)
    for total, rows in groups.items():
        block = beam_splitter_block(total, float(theta), float(phi))
        out[rows] = state.amplitudes[rows] @ block.T
    return FockState(state.basis, out)


def apply_phase_shifter(state: FockState, mode: int, phi: float) -> FockState:
    """Multiply each amplitude by exp(i phi n_mode)"""
    state.basis.check_mode(mode)
    phases = np.exp(1j * phi * state.basis.states[:, mode])
    return FockState(state.basis, state.amplitudes * phases)
