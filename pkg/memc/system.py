"""
Multiway cut system main module
One entry point that builds the QUBO and dispatches to every backend
"""
import math
import time
from typing import Any, Dict, Mapping, Optional

from .instances import MulticutInstance
from .optim import OptimizerConfig
from .photonic import default_input_state, photonic_optimize
from .qaoa import qaoa_optimize
from .qubo import QuboModel, build_qubo, qubo_energies
from .solver import (
    ORTOOLS_AVAILABLE, SolverReport, brute_force_partition, brute_force_qubo,
    default_schedule, greedy_isolation, min_cut_k2, report_from_cut, simulated_annealing
)
from .utils import CONFIG, OracleCache, ParameterError, setup_logging, format_duration

logger = setup_logging()

BACKENDS = ("exact", "maxflow", "greedy", "sa", "qaoa", "photonic")

_TRUE = ("1", "true", "yes", "on")


def setting(settings: Mapping[str, Any], key: str, cast, default):
    """Typed lookup in a backend settings mapping whose values may be strings"""
    if key not in settings or settings[key] in (None, ""):
        return default
    value = settings[key]
    if cast is bool and isinstance(value, str):
        return value.strip().lower() in _TRUE
    try:
        return cast(value)
    except (TypeError, ValueError):
        raise ParameterError(f"Setting {key}={value!r} is not a valid {cast.__name__}")


class MulticutSystem:
    """Backend dispatch, oracle lookup and QUBO construction"""

    def __init__(self, cache_enabled: Optional[bool] = None, workers: Optional[int] = None):
        """Initialize the multiway cut system

        Args:
            cache_enabled: Whether oracle optima are cached on disk
            workers: Worker threads for annealing reads
        """
        enabled = CONFIG.CACHE_ENABLED if cache_enabled is None else cache_enabled
        self.cache = OracleCache(CONFIG.CACHE_DIR) if enabled else None
        self.workers = CONFIG.MAX_WORKERS if workers is None else workers
        logger.debug(f"Multiway cut system ready (cache={'on' if self.cache else 'off'})")

    def get_system_status(self) -> Dict[str, Any]:
        return {
            "backends": list(BACKENDS),
            "ortools_available": ORTOOLS_AVAILABLE,
            "cache_enabled": self.cache is not None,
            "cache_dir": CONFIG.CACHE_DIR if self.cache else None,
            "workers": self.workers,
        }

    def build_model(self, instance: MulticutInstance, alpha: Optional[float] = None,
                    reduced: bool = False) -> QuboModel:
        return build_qubo(instance, penalty_weight=alpha, reduced=reduced)

    def solve(self, instance: MulticutInstance, backend: str, seed: int = 0,
              shots: Optional[int] = None, depth: Optional[int] = None,
              alpha: Optional[float] = None, reduced: Optional[bool] = None,
              settings: Optional[Mapping[str, Any]] = None) -> SolverReport:
        """
        Solve one instance with one backend.

        Args:
            instance: Multiway cut instance
            backend: One of BACKENDS
            seed: Seed for stochastic backends
            shots: Final sampling shots (qaoa, photonic)
            depth: QAOA depth
            alpha: QUBO penalty weight
            reduced: Use the terminal-eliminated encoding
            settings: Extra backend settings (sweeps, reads, engine, method,
                max_evaluations, optimizer, encoding, objective_shots, photons)

        Returns:
            SolverReport whose energy is measured on the chosen encoding

        Raises:
            ParameterError: Unknown backend or bad setting
            CapacityError: Instance beyond the backend's cap
        """
        if backend not in BACKENDS:
            raise ParameterError(f"Unknown backend '{backend}', expected one of {BACKENDS}")
        settings = dict(settings or {})
        if reduced is None:
            reduced = setting(settings, "encoding", str, "full") == "reduced"
        alpha = alpha if alpha is not None else setting(settings, "alpha", float, None)
        model = self.build_model(instance, alpha=alpha, reduced=reduced)

        logger.info(f"Solving {instance.name or 'instance'} (|V|={instance.num_vertices}, "
                    f"k={instance.k}) with {backend}")
        start = time.perf_counter()
        if backend == "exact":
            if setting(settings, "method", str, "partition") == "qubo":
                report = brute_force_qubo(model, instance=instance)
            else:
                cut = brute_force_partition(instance)
                report = report_from_cut(model, cut, instance, "exact", time.perf_counter() - start,
                                         samples_evaluated=instance.k ** len(instance.non_terminals()))
        elif backend == "maxflow":
            cut = min_cut_k2(instance, engine=setting(settings, "engine", str, "bfs"))
            report = report_from_cut(model, cut, instance, "maxflow", time.perf_counter() - start)
        elif backend == "greedy":
            cut = greedy_isolation(instance, prune=setting(settings, "prune", bool, True))
            report = report_from_cut(model, cut, instance, "greedy", time.perf_counter() - start,
                                     samples_evaluated=instance.k)
        elif backend == "sa":
            schedule = default_schedule(instance.total_cost, setting(settings, "sweeps", int, None))
            report = simulated_annealing(
                model, schedule, num_reads=setting(settings, "reads", int, None),
                seed=seed, instance=instance, workers=self.workers,
            )
        elif backend == "qaoa":
            depth = setting(settings, "depth", int, 1) if depth is None else depth
            config = OptimizerConfig(
                method=setting(settings, "optimizer", str, "nelder_mead"),
                max_evaluations=setting(settings, "max_evaluations", int, CONFIG.QAOA_MAX_EVALUATIONS),
                bounds=[(0.0, math.pi)] * (2 * depth),
                seed=seed,
            )
            report = qaoa_optimize(
                model, depth=depth, config=config, seed=seed,
                shots=setting(settings, "shots", int, None) if shots is None else shots, instance=instance,
            )
        else:
            photons = setting(settings, "photons", str, "parity")
            if photons not in ("parity", "minimal"):
                raise ParameterError(f"photons must be parity or minimal, got '{photons}'")
            num_parameters = model.size * (model.size - 1) + model.size
            config = OptimizerConfig(
                method=setting(settings, "optimizer", str, "nelder_mead"),
                max_evaluations=setting(settings, "max_evaluations", int, CONFIG.PHOTONIC_MAX_EVALUATIONS),
                bounds=[(0.0, 2.0 * math.pi)] * num_parameters,
                seed=seed,
            )
            report = photonic_optimize(
                model, config=config, seed=seed,
                shots=setting(settings, "shots", int, None) if shots is None else shots,
                objective_shots=setting(settings, "objective_shots", int, None),
                input_occupation=default_input_state(model, minimal=photons == "minimal"),
                instance=instance,
            )

        report.seed = seed
        report.extra.setdefault("encoding", "reduced" if reduced else "full")
        logger.info(f"{backend}: energy {report.best_energy} "
                    f"({'feasible' if report.feasible else 'infeasible'}) "
                    f"in {format_duration(report.wall_time)}")
        return report

    def oracle(self, instance: MulticutInstance) -> Optional[Dict[str, Any]]:
        """
        Exact optimum: the partition oracle when enumerable, max-flow when k = 2.

        Returns:
            {'opt': cost, 'method': name} or None when no exact method applies
        """
        if self.cache is not None:
            cached = self.cache.get(instance)
            if cached is not None:
                return cached

        entry = None
        free = len(instance.non_terminals())
        if instance.k ** free <= CONFIG.PARTITION_MAX_ASSIGNMENTS:
            entry = {"opt": brute_force_partition(instance).cut_cost, "method": "partition"}
        elif instance.k == 2:
            entry = {"opt": min_cut_k2(instance).cut_cost, "method": "maxflow"}
        else:
            logger.warning(f"No exact oracle for {instance.name or 'instance'} "
                           f"(k={instance.k}, {free} free vertices)")

        if entry is not None and self.cache is not None:
            self.cache.put(instance, entry)
        return entry


def optimal_probability(model: QuboModel, report: SolverReport, optimum: float) -> Optional[float]:
    """Share of shots whose energy reaches the optimum; None for non-sampling backends"""
    if not report.counts or report.backend_name not in ("qaoa", "photonic"):
        return None
    keys = list(report.counts)
    energies = qubo_energies(model, [[int(ch) for ch in s] for s in keys])
    hits = sum(report.counts[s] for s, e in zip(keys, energies) if e <= optimum + CONFIG.ENERGY_TOL)
    return hits / report.total_shots
