"""
Interferometer circuits
Rectangular beam splitter mesh, parameter registry, mode unitary and text dump
"""
import os
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .fock import FockBasis, FockState, apply_beam_splitter, apply_phase_shifter, beam_splitter_matrix
from ..utils.errors import DimensionError, ParameterError, ParseError


@dataclass(frozen=True)
class Gate:
    """'bs' on modes (p, q) with parameters (theta, phi), or 'ps' on (j,) with (phi,)"""
    kind: str
    modes: Tuple[int, ...]
    parameters: Tuple[int, ...]


@dataclass
class InterferometerCircuit:
    """Ordered gates over M modes; gate angles are slots of one flat parameter vector"""
    modes: int
    gates: List[Gate] = field(default_factory=list)
    num_parameters: int = 0

    def __post_init__(self):
        if self.modes < 1:
            raise ParameterError(f"Circuit needs at least one mode, got {self.modes}")

    def add_beam_splitter(self, p: int, q: int) -> Gate:
        for j in (p, q):
            if not 0 <= j < self.modes:
                raise ParameterError(f"Mode {j} outside 0..{self.modes - 1}")
        if p == q:
            raise ParameterError(f"Beam splitter needs two distinct modes, got ({p}, {q})")
        gate = Gate("bs", (p, q), (self.num_parameters, self.num_parameters + 1))
        self.num_parameters += 2
        self.gates.append(gate)
        return gate

    def add_phase_shifter(self, j: int) -> Gate:
        if not 0 <= j < self.modes:
            raise ParameterError(f"Mode {j} outside 0..{self.modes - 1}")
        gate = Gate("ps", (j,), (self.num_parameters,))
        self.num_parameters += 1
        self.gates.append(gate)
        return gate

    @property
    def num_beam_splitters(self) -> int:
        return sum(1 for g in self.gates if g.kind == "bs")

    @property
    def num_phase_shifters(self) -> int:
        return sum(1 for g in self.gates if g.kind == "ps")

    def check_parameters(self, params: Sequence[float]) -> np.ndarray:
        params = np.asarray(params, dtype=float).ravel()
        if params.shape[0] != self.num_parameters:
            raise ParameterError(
                f"Circuit has {self.num_parameters} parameters, got a vector of {params.shape[0]}"
            )
        return params

    def bind(self, params: Sequence[float]) -> List[Tuple[Gate, Tuple[float, ...]]]:
        """Gates paired with their angles"""
        params = self.check_parameters(params)
        return [(g, tuple(float(params[i]) for i in g.parameters)) for g in self.gates]

    def mode_unitary(self, params: Sequence[float]) -> np.ndarray:
        """M x M transfer matrix of the circuit (output mode x input mode)"""
        u = np.eye(self.modes, dtype=np.complex128)
        for gate, angles in self.bind(params):
            g = np.eye(self.modes, dtype=np.complex128)
            if gate.kind == "bs":
                p, q = gate.modes
                block = beam_splitter_matrix(*angles)
                g[np.ix_([p, q], [p, q])] = block
            else:
                (j,) = gate.modes
                g[j, j] = np.exp(1j * angles[0])
            u = g @ u
        return u


def build_generic_interferometer(modes: int) -> InterferometerCircuit:
    """
    Rectangular mesh: M layers of beam splitters alternating between pairs
    (0,1),(2,3),... and (1,2),(3,4),..., then one phase shifter per mode.

    Returns:
        Circuit with M(M-1)/2 beam splitters and M(M-1) + M parameters
    """
    if modes < 2:
        raise ParameterError(f"Generic interferometer needs at least 2 modes, got {modes}")
    circuit = InterferometerCircuit(modes)
    for layer in range(modes):
        for p in range(layer % 2, modes - 1, 2):
            circuit.add_beam_splitter(p, p + 1)
    for j in range(modes):
        circuit.add_phase_shifter(j)
    return circuit


def apply_gates(circuit: InterferometerCircuit, state: FockState,
                params: Sequence[float]) -> FockState:
    for gate, angles in circuit.bind(params):
        if gate.kind == "bs":
            state = apply_beam_splitter(state, gate.modes, *angles)
        else:
            state = apply_phase_shifter(state, gate.modes[0], angles[0])
    return state


def run_circuit(circuit: InterferometerCircuit, input_occupation: Sequence[int],
                params: Sequence[float], basis: FockBasis = None) -> FockState:
    """
    Evolve the basis state |n_in> through the circuit.

    Args:
        circuit: Interferometer
        input_occupation: Photons per mode, length M
        params: Flat parameter vector
        basis: Reusable basis with matching modes and photon count

    Raises:
        ParameterError: Occupation or parameter length mismatch
        CapacityError: Basis above CONFIG.FOCK_MAX_BASIS
    """
    occupation = tuple(int(n) for n in input_occupation)
    if len(occupation) != circuit.modes:
        raise ParameterError(f"Input occupation has {len(occupation)} modes, circuit has {circuit.modes}")
    if any(n < 0 for n in occupation):
        raise ParameterError(f"Negative photon count in {occupation}")
    circuit.check_parameters(params)
    if basis is None:
        basis = FockBasis(circuit.modes, sum(occupation))
    elif basis.modes != circuit.modes or basis.photons != sum(occupation):
        raise DimensionError("Basis does not match the circuit and input photon count")
    return apply_gates(circuit, FockState.basis_state(basis, occupation), params)


def dumps_circuit(circuit: InterferometerCircuit, params: Sequence[float]) -> str:
    """'lo <M>' header, then 'bs <p> <q> <theta> <phi>' and 'ps <j> <phi>' lines"""
    lines = [f"lo {circuit.modes}"]
    for gate, angles in circuit.bind(params):
        modes = " ".join(str(j) for j in gate.modes)
        values = " ".join(repr(a) for a in angles)
        lines.append(f"{gate.kind} {modes} {values}")
    return "\n".join(lines) + "\n"


def loads_circuit(text: str) -> Tuple[InterferometerCircuit, np.ndarray]:
    """
    Parse a circuit dump into a circuit and its parameter vector.

    Raises:
        ParseError: Malformed line, with its line number
    """
    circuit = None
    params: List[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        try:
            if circuit is None:
                if tokens[0] != "lo" or len(tokens) != 2:
                    raise ParseError("expected header 'lo <M>'", lineno)
                circuit = InterferometerCircuit(int(tokens[1]))
            elif tokens[0] == "bs" and len(tokens) == 5:
                circuit.add_beam_splitter(int(tokens[1]), int(tokens[2]))
                params.extend([float(tokens[3]), float(tokens[4])])
            elif tokens[0] == "ps" and len(tokens) == 3:
                circuit.add_phase_shifter(int(tokens[1]))
                params.append(float(tokens[2]))
            else:
                raise ParseError(f"unrecognized gate line '{raw.strip()}'", lineno)
        except ParseError:
            raise
        except ValueError as e:
            raise ParseError(str(e), lineno)
    if circuit is None:
        raise ParseError("missing 'lo' header")
    return circuit, np.array(params)


def save_circuit(circuit: InterferometerCircuit, params: Sequence[float], path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_circuit(circuit, params))
    return path
