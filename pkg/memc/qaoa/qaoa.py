"""
QAOA over the diagonal QUBO cost Hamiltonian
Expectation, sampling, p=1 grid oracle and the classical optimization loop
"""
import math
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .statevector import (
    Statevector, apply_cost_layer, apply_mixer_layer, check_qubits, prepare_plus_state
)
from ..instances.model import MulticutInstance
from ..optim import OptimizerConfig, OptimizerResult, grid_scan, grids_from_bounds, minimize
from ..qubo.encoding import QuboModel, energy_table, index_bits, lexicographic_rank
from ..solver.report import SolverReport, make_report
from ..utils.config import CONFIG, setup_logging, format_bitstring, format_duration
from ..utils.errors import DimensionError, ParameterError

logger = setup_logging()


@dataclass(frozen=True)
class QaoaParams:
    """Cost angles gammas and mixer angles betas, one of each per layer"""
    gammas: Tuple[float, ...]
    betas: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if len(self.gammas) != len(self.betas):
            raise DimensionError(f"{len(self.gammas)} gammas but {len(self.betas)} betas")
        if not self.gammas:
            raise ParameterError("QAOA depth must be >= 1")
        if not all(math.isfinite(v) for v in self.gammas + self.betas):
            raise ParameterError("QAOA angles must be finite")

    @property
    def depth(self) -> int:
        return len(self.gammas)

    def to_vector(self) -> np.ndarray:
        """[gamma_1..gamma_p, beta_1..beta_p]"""
        return np.array(self.gammas + self.betas)

    @classmethod
    def from_vector(cls, vector: Sequence[float]) -> "QaoaParams":
        vector = np.asarray(vector, dtype=float).ravel()
        if vector.size % 2:
            raise DimensionError(f"QAOA parameter vector has odd length {vector.size}")
        p = vector.size // 2
        return cls(tuple(vector[:p]), tuple(vector[p:]))

    @classmethod
    def initial(cls, depth: int) -> "QaoaParams":
        """Every layer at (CONFIG.QAOA_GAMMA0, CONFIG.QAOA_BETA0)"""
        if depth < 1:
            raise ParameterError(f"QAOA depth must be >= 1, got {depth}")
        return cls((CONFIG.QAOA_GAMMA0,) * depth, (CONFIG.QAOA_BETA0,) * depth)

    def extended(self, depth: int) -> "QaoaParams":
        """Same leading layers, extra layers at zero angles"""
        extra = depth - self.depth
        if extra < 0:
            raise ParameterError(f"Cannot shrink depth {self.depth} to {depth}")
        return QaoaParams(self.gammas + (0.0,) * extra, self.betas + (0.0,) * extra)


@dataclass(frozen=True)
class QaoaIterationLog:
    """One objective evaluation of the optimization loop"""
    evaluation: int
    gammas: Tuple[float, ...]
    betas: Tuple[float, ...]
    expectation: float
    most_probable_energy: float
    most_probable_probability: float


def cost_table(model: QuboModel) -> np.ndarray:
    check_qubits(model.size)
    return energy_table(model)


def qaoa_state(model: QuboModel, params: QaoaParams,
               energies: Optional[np.ndarray] = None) -> Statevector:
    """|psi(gamma, beta)> from |+>^n, cost then mixer layer p times"""
    energies = cost_table(model) if energies is None else energies
    state = prepare_plus_state(model.size)
    for gamma, beta in zip(params.gammas, params.betas):
        state = apply_cost_layer(state, energies, gamma)
        state = apply_mixer_layer(state, beta)
    return state


def qaoa_expectation(model: QuboModel, params: QaoaParams,
                     energies: Optional[np.ndarray] = None) -> float:
    """
    Sum_b |amp_b|^2 E_b.

    Raises:
        CapacityError: More than CONFIG.QAOA_MAX_QUBITS variables
    """
    energies = cost_table(model) if energies is None else energies
    probabilities = qaoa_state(model, params, energies).probabilities()
    return float(probabilities @ energies)


def sample_counts(probabilities: np.ndarray, num_qubits: int, shots: int,
                  seed: int) -> Dict[str, int]:
    """Histogram of `shots` basis draws, keyed by bitstring, sorted by key"""
    if shots < 1:
        raise ParameterError(f"shots must be >= 1, got {shots}")
    p = probabilities / probabilities.sum()
    rng = np.random.default_rng(seed)
    draws = rng.choice(p.shape[0], size=shots, p=p)
    outcomes, frequencies = np.unique(draws, return_counts=True)
    bits = index_bits(outcomes, num_qubits)
    return dict(sorted((format_bitstring(row), int(c)) for row, c in zip(bits, frequencies)))


def qaoa_sample(model: QuboModel, params: QaoaParams, shots: int, seed: int = 0,
                energies: Optional[np.ndarray] = None) -> Dict[str, int]:
    """Measurement histogram of the QAOA state, deterministic for a fixed seed"""
    state = qaoa_state(model, params, energies)
    return sample_counts(state.probabilities(), model.size, shots, seed)


def qaoa_grid_oracle(model: QuboModel, points: Optional[int] = None
                     ) -> Tuple[QaoaParams, float, OptimizerResult]:
    """
    Deterministic p=1 scan of (gamma, beta) over a points x points grid on [0, pi]^2.

    Returns:
        (best params, best expectation, full grid result)
    """
    points = CONFIG.QAOA_GRID_POINTS if points is None else points
    energies = cost_table(model)
    result = grid_scan(
        lambda v: qaoa_expectation(model, QaoaParams.from_vector(v), energies),
        grids_from_bounds([(0.0, math.pi), (0.0, math.pi)], points),
    )
    params = QaoaParams.from_vector(result.best_point)
    logger.info(f"QAOA grid oracle ({points}x{points}): gamma={params.gammas[0]:.4f} "
                f"beta={params.betas[0]:.4f} expectation={result.best_value:.6g}")
    return params, result.best_value, result


def lowest_sampled(model: QuboModel, counts: Dict[str, int],
                   energies: np.ndarray) -> str:
    """Lowest-energy bitstring among the sampled ones, lexicographic on ties"""
    keys = list(counts)
    indices = np.array([sum(int(ch) << i for i, ch in enumerate(s)) for s in keys], dtype=np.int64)
    sampled = energies[indices]
    candidates = np.flatnonzero(sampled <= sampled.min() + CONFIG.ENERGY_TOL)
    ranks = lexicographic_rank(indices[candidates], model.size)
    return keys[int(candidates[np.argmin(ranks)])]


def qaoa_optimize(model: QuboModel,
                  depth: int = 1,
                  config: Optional[OptimizerConfig] = None,
                  seed: int = 0,
                  shots: Optional[int] = None,
                  initial: Optional[QaoaParams] = None,
                  instance: Optional[MulticutInstance] = None) -> SolverReport:
    """
    Minimize the QAOA_p expectation and sample the optimized state.

    Args:
        model: QUBO with at most CONFIG.QAOA_MAX_QUBITS variables
        depth: Number of layers p
        config: Optimizer settings; default Nelder-Mead on [0, pi]^(2p) with
            CONFIG.QAOA_MAX_EVALUATIONS evaluations
        seed: Seed of the final sampling
        shots: Final measurement shots (CONFIG.QAOA_SHOTS)
        initial: Start point, default gamma0 = pi/4 and beta0 = pi/2 on every layer
        instance: Optional instance, used to attach the decoded cut

    Returns:
        SolverReport with the lowest-energy sampled bitstring; converged mirrors the
        optimizer, history holds one QaoaIterationLog per evaluation

    Raises:
        CapacityError: More than CONFIG.QAOA_MAX_QUBITS variables
    """
    start = time.perf_counter()
    shots = CONFIG.QAOA_SHOTS if shots is None else shots
    if shots < 1:
        raise ParameterError(f"shots must be >= 1, got {shots}")
    initial = QaoaParams.initial(depth) if initial is None else initial
    if initial.depth != depth:
        raise DimensionError(f"Initial params have depth {initial.depth}, expected {depth}")
    config = config or OptimizerConfig(
        method="nelder_mead",
        max_evaluations=CONFIG.QAOA_MAX_EVALUATIONS,
        bounds=[(0.0, math.pi)] * (2 * depth),
        seed=seed,
    )

    energies = cost_table(model)
    history: List[QaoaIterationLog] = []

    def objective(vector: np.ndarray) -> float:
        params = QaoaParams.from_vector(vector)
        probabilities = qaoa_state(model, params, energies).probabilities()
        expectation = float(probabilities @ energies)
        top = int(np.argmax(probabilities))
        history.append(QaoaIterationLog(
            evaluation=len(history),
            gammas=params.gammas,
            betas=params.betas,
            expectation=expectation,
            most_probable_energy=float(energies[top]),
            most_probable_probability=float(probabilities[top]),
        ))
        return expectation

    logger.info(f"QAOA p={depth} on {model.size} qubits with {config.method}")
    result = minimize(objective, initial.to_vector(), config)
    best = QaoaParams.from_vector(result.best_point)

    counts = qaoa_sample(model, best, shots, seed, energies)
    chosen = lowest_sampled(model, counts, energies)
    elapsed = time.perf_counter() - start

    report = make_report(
        model, [int(ch) for ch in chosen], "qaoa", elapsed, result.evaluations,
        instance=instance, seed=seed, counts=counts, converged=result.converged,
        trace=result.trace, history=history,
        extra={
            "depth": depth,
            "gammas": list(best.gammas),
            "betas": list(best.betas),
            "expectation": result.best_value,
            "shots": shots,
            "optimizer": config.method,
            "message": result.message,
        },
    )
    logger.info(f"QAOA expectation {result.best_value:.6g}, best sampled energy "
                f"{report.best_energy} in {format_duration(elapsed)}")
    return report
