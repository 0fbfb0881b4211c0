"""
Variational photonic workflow
Parity readout of photon counts, QUBO expectation, sampling and optimization
"""
import math
import time
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .circuit import InterferometerCircuit, build_generic_interferometer, dumps_circuit, run_circuit
from .fock import FockBasis, FockState
from ..instances.model import MulticutInstance
from ..optim import OptimizerConfig, minimize
from ..qubo.encoding import QuboModel, qubo_energies
from ..solver.report import SolverReport, make_report
from ..utils.config import CONFIG, setup_logging, format_bitstring, format_duration
from ..utils.errors import DimensionError, ParameterError

logger = setup_logging()


def parity_decode(occupation: Sequence[int]) -> Tuple[int, ...]:
    """x_i = n_i mod 2"""
    return tuple(int(n) % 2 for n in occupation)


def input_photons(model: QuboModel, minimal: bool = False) -> int:
    """
    Photon count of the default input state.

    Feasible bitstrings set exactly one variable per one-hot group, so the photon
    number must share the parity of the group count. The default is the smallest
    count >= |V| with that parity; minimal=True uses the group count itself
    (|V| - k in the reduced encoding).
    """
    if model.index is None:
        return 1
    groups = len(model.index.vertices)
    if minimal:
        return groups
    photons = model.index.num_vertices
    if (photons - groups) % 2:
        photons += 1
    return photons


def default_input_state(model: QuboModel, minimal: bool = False) -> Tuple[int, ...]:
    """One photon in each of the first P modes, wrapping around when P exceeds the modes"""
    if model.size < 1:
        raise ParameterError("Model has no variables to carry photons")
    occupation = [0] * model.size
    for i in range(input_photons(model, minimal)):
        occupation[i % model.size] += 1
    return tuple(occupation)


class ParityCost:
    """QUBO energy of the parity-decoded bitstring of every basis state"""

    def __init__(self, model: QuboModel, basis: FockBasis):
        if basis.modes != model.size:
            raise DimensionError(f"{basis.modes} modes for a QUBO of {model.size} variables")
        self.model = model
        self.basis = basis
        self.bits = (basis.states % 2).astype(np.int8)
        self.energies = qubo_energies(model, self.bits)

    def exact(self, state: FockState) -> float:
        return float(state.probabilities() @ self.energies)

    def draws(self, state: FockState, shots: int, seed) -> np.ndarray:
        if shots < 1:
            raise ParameterError(f"shots must be >= 1, got {shots}")
        p = state.probabilities()
        rng = np.random.default_rng(seed)
        return rng.choice(p.shape[0], size=shots, p=p / p.sum())

    def estimate(self, state: FockState, shots: int, seed) -> float:
        return float(self.energies[self.draws(state, shots, seed)].mean())

    def histogram(self, state: FockState, shots: int, seed) -> Dict[str, int]:
        outcomes, frequencies = np.unique(self.draws(state, shots, seed), return_counts=True)
        counts: Dict[str, int] = {}
        for i, c in zip(outcomes, frequencies):
            key = format_bitstring(self.bits[i])
            counts[key] = counts.get(key, 0) + int(c)
        return dict(sorted(counts.items()))


def photonic_expectation(model: QuboModel, circuit: InterferometerCircuit,
                         input_occupation: Sequence[int], params: Sequence[float],
                         shots: Optional[int] = None, seed: int = 0) -> float:
    """
    Expected QUBO energy of the parity readout.

    Exact over the full output distribution when shots is None, otherwise the mean
    over `shots` sampled occupations.

    Raises:
        DimensionError: circuit modes != number of QUBO variables
    """
    if circuit.modes != model.size:
        raise DimensionError(f"Circuit has {circuit.modes} modes, QUBO has {model.size} variables")
    state = run_circuit(circuit, input_occupation, params)
    cost = ParityCost(model, state.basis)
    return cost.exact(state) if shots is None else cost.estimate(state, shots, seed)


def photonic_sample(model: QuboModel, circuit: InterferometerCircuit,
                    input_occupation: Sequence[int], params: Sequence[float],
                    shots: int, seed: int = 0) -> Dict[str, int]:
    """Histogram of parity-decoded bitstrings over `shots` measurements"""
    if circuit.modes != model.size:
        raise DimensionError(f"Circuit has {circuit.modes} modes, QUBO has {model.size} variables")
    state = run_circuit(circuit, input_occupation, params)
    return ParityCost(model, state.basis).histogram(state, shots, seed)


def best_feasible(model: QuboModel, counts: Dict[str, int]) -> str:
    """Lowest-energy feasible sampled bitstring; lowest overall when none decodes"""
    keys = sorted(counts)
    energies = qubo_energies(model, np.array([[int(ch) for ch in s] for s in keys]))
    if model.index is not None:
        feasible = [model.index.decode([int(ch) for ch in s]).feasible for s in keys]
        if any(feasible):
            keys = [s for s, ok in zip(keys, feasible) if ok]
            energies = energies[np.array(feasible)]
    lowest = energies.min()
    return min(s for s, e in zip(keys, energies) if e <= lowest + CONFIG.ENERGY_TOL)


def photonic_optimize(model: QuboModel,
                      config: Optional[OptimizerConfig] = None,
                      seed: int = 0,
                      shots: Optional[int] = None,
                      objective_shots: Optional[int] = None,
                      input_occupation: Optional[Sequence[int]] = None,
                      instance: Optional[MulticutInstance] = None) -> SolverReport:
    """
    Train a generic interferometer on the QUBO and sample the result.

    Args:
        model: QUBO; one mode per variable
        config: Optimizer settings; default Nelder-Mead on [0, 2pi] per angle with
            CONFIG.PHOTONIC_MAX_EVALUATIONS evaluations
        seed: Seeds the initial angles, shot noise and the final sampling
        shots: Final measurement shots (CONFIG.PHOTONIC_SHOTS)
        objective_shots: Estimate the training objective from this many shots
            instead of the exact distribution
        input_occupation: Input Fock state, default_input_state when omitted
        instance: Optional instance, used to attach the decoded cut

    Returns:
        SolverReport with the best feasible sampled bitstring

    Raises:
        CapacityError: Fock basis above CONFIG.FOCK_MAX_BASIS
    """
    start = time.perf_counter()
    shots = CONFIG.PHOTONIC_SHOTS if shots is None else shots
    if shots < 1:
        raise ParameterError(f"shots must be >= 1, got {shots}")
    occupation = tuple(input_occupation) if input_occupation is not None else default_input_state(model)
    circuit = build_generic_interferometer(model.size)
    basis = FockBasis(circuit.modes, sum(occupation))
    cost = ParityCost(model, basis)

    rng = np.random.default_rng(seed)
    x0 = rng.uniform(0.0, 2.0 * math.pi, size=circuit.num_parameters)
    config = config or OptimizerConfig(
        method="nelder_mead",
        max_evaluations=CONFIG.PHOTONIC_MAX_EVALUATIONS,
        bounds=[(0.0, 2.0 * math.pi)] * circuit.num_parameters,
        seed=seed,
    )
    evaluations = [0]

    def objective(params: np.ndarray) -> float:
        state = run_circuit(circuit, occupation, params, basis)
        evaluations[0] += 1
        if objective_shots is None:
            return cost.exact(state)
        return cost.estimate(state, objective_shots, [seed, evaluations[0]])

    logger.info(f"Photonic optimization: {circuit.modes} modes, {basis.photons} photons, "
                f"basis {basis.size}, {circuit.num_parameters} parameters")
    result = minimize(objective, x0, config)

    final_state = run_circuit(circuit, occupation, result.best_point, basis)
    counts = cost.histogram(final_state, shots, [seed, 0])
    chosen = best_feasible(model, counts)
    elapsed = time.perf_counter() - start

    report = make_report(
        model, [int(ch) for ch in chosen], "photonic", elapsed, result.evaluations,
        instance=instance, seed=seed, counts=counts, converged=result.converged,
        trace=result.trace,
        extra={
            "modes": circuit.modes,
            "photons": basis.photons,
            "input": list(occupation),
            "expectation": cost.exact(final_state),
            "objective": result.best_value,
            "shots": shots,
            "optimizer": config.method,
            "message": result.message,
            "circuit": dumps_circuit(circuit, result.best_point),
        },
    )
    logger.info(f"Photonic best sampled energy {report.best_energy} "
                f"(exact expectation {report.extra['expectation']:.6g}) in {format_duration(elapsed)}")
    return report
