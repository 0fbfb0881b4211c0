"""
Exhaustive grid scan, uniform random search and optimizer dispatch
"""
import itertools
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .nelder_mead import nelder_mead
from .trace import (
    Objective, OptimizerConfig, OptimizerResult, OptimizerTrace, TracedObjective
)
from ..utils.config import CONFIG, setup_logging
from ..utils.errors import CapacityError, ParameterError

logger = setup_logging()


def grid_scan(objective: Objective, grids: Sequence[Sequence[float]]) -> OptimizerResult:
    """
    Evaluate the objective on the Cartesian product of per-dimension grids.

    Points are visited in lexicographic order of grid positions and only a strictly
    lower value replaces the incumbent, so the first minimum wins.

    Raises:
        ParameterError: No dimensions or an empty grid dimension
        CapacityError: More than CONFIG.GRID_MAX_POINTS points
    """
    grids = [np.asarray(g, dtype=float).ravel() for g in grids]
    if not grids:
        raise ParameterError("grid_scan needs at least one dimension")
    if any(g.size == 0 for g in grids):
        raise ParameterError("grid_scan got an empty grid dimension")
    total = int(np.prod([g.size for g in grids], dtype=object))
    if total > CONFIG.GRID_MAX_POINTS:
        raise CapacityError(f"{total} grid points exceed the cap {CONFIG.GRID_MAX_POINTS}")

    trace = OptimizerTrace()
    f = TracedObjective(objective, total, trace)
    for point in itertools.product(*grids):
        f(np.array(point))

    logger.debug(f"Grid scan over {total} points, best {trace.best_value}")
    return OptimizerResult.from_trace(trace, True, f"scanned {total} points", "grid_scan",
                                      [g[0] for g in grids])


def random_search(objective: Objective, bounds: Sequence[Tuple[float, float]],
                  config: Optional[OptimizerConfig] = None) -> OptimizerResult:
    """
    Uniform random sampling inside the bounds, deterministic per config.seed.

    Raises:
        ParameterError: Missing or unbounded bounds
    """
    if not bounds:
        raise ParameterError("random_search needs bounds")
    config = config or OptimizerConfig(method="random_search", bounds=bounds)
    lower = np.array([float(lo) for lo, _ in bounds])
    upper = np.array([float(hi) for _, hi in bounds])
    if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
        raise ParameterError("random_search needs finite bounds")
    if np.any(lower > upper):
        raise ParameterError("random_search bounds are not ordered")

    rng = np.random.default_rng(config.seed)
    samples = rng.uniform(lower, upper, size=(config.max_evaluations, lower.size))
    trace = OptimizerTrace()
    f = TracedObjective(objective, config.max_evaluations, trace)
    for point in samples:
        f(point)
    return OptimizerResult.from_trace(trace, True, f"sampled {len(trace)} points",
                                      "random_search", samples[0])


def grids_from_bounds(bounds: Sequence[Tuple[float, float]], points: int) -> list:
    """Evenly spaced grid of `points` values per bounded axis, endpoints included"""
    if points < 1:
        raise ParameterError(f"points must be >= 1, got {points}")
    return [np.linspace(lo, hi, points) for lo, hi in bounds]


def minimize(objective: Objective, initial_point: Sequence[float],
             config: OptimizerConfig, grid_points: Optional[int] = None) -> OptimizerResult:
    """
    Run the method named by config.method.

    grid_scan uses grid_points per axis (CONFIG.QAOA_GRID_POINTS) over config.bounds.
    """
    if config.method == "nelder_mead":
        return nelder_mead(objective, initial_point, config)
    if config.bounds is None:
        raise ParameterError(f"{config.method} needs bounds")
    if config.method == "random_search":
        return random_search(objective, config.bounds, config)
    points = CONFIG.QAOA_GRID_POINTS if grid_points is None else grid_points
    return grid_scan(objective, grids_from_bounds(config.bounds, points))


def compare_optimizers(objective: Objective, initial_point: Sequence[float],
                       bounds: Sequence[Tuple[float, float]], max_evaluations: int,
                       seed: int = 0) -> Dict[str, OptimizerResult]:
    """
    Run every method on one objective with the same evaluation budget.

    The grid resolution is the largest per-axis count whose product fits the budget.
    """
    dim = len(bounds)
    per_axis = max(1, int(np.floor(max_evaluations ** (1.0 / dim) + 1e-9)))
    results = {}
    for method in ("nelder_mead", "random_search", "grid_scan"):
        config = OptimizerConfig(method=method, max_evaluations=max_evaluations,
                                 bounds=bounds, seed=seed)
        results[method] = minimize(objective, initial_point, config, grid_points=per_axis)
        logger.info(f"{method}: best {results[method].best_value:.6g} "
                    f"after {results[method].evaluations} evaluations")
    return results
