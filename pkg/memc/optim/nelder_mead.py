"""
Nelder-Mead simplex search with box clamping
"""
import math
from typing import Optional, Sequence

import numpy as np

from .trace import (
    BudgetExhausted, Objective, OptimizerConfig, OptimizerResult, OptimizerTrace, TracedObjective
)
from ..utils.config import setup_logging
from ..utils.errors import ParameterError

logger = setup_logging()

REFLECTION = 1.0
EXPANSION = 2.0
CONTRACTION = 0.5
SHRINK = 0.5


def initial_steps(lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """5% of the bound width per axis, 0.1 on unbounded or degenerate axes"""
    width = upper - lower
    steps = np.where(np.isfinite(width) & (width > 0), 0.05 * width, 0.1)
    return steps


def nelder_mead(objective: Objective, initial_point: Sequence[float],
                config: Optional[OptimizerConfig] = None) -> OptimizerResult:
    """
    Minimize a function with the Nelder-Mead simplex method.

    Proposed vertices are clamped into the bounds. The search stops when the spread
    of simplex values or the largest vertex distance from the best vertex drops to
    config.tolerance, or when config.max_evaluations calls have been made.

    Args:
        objective: Function of a 1-d array returning a scalar
        initial_point: Start vertex, inside the bounds when bounds are given
        config: Optimizer settings

    Returns:
        OptimizerResult; converged is False on budget exhaustion or when every
        simplex vertex evaluated to a non-finite value

    Raises:
        ParameterError: Empty point or start outside the bounds
    """
    config = config or OptimizerConfig()
    x0 = np.asarray(initial_point, dtype=float).ravel()
    dim = x0.shape[0]
    if dim < 1:
        raise ParameterError("nelder_mead needs at least one dimension")
    lower, upper = config.bound_arrays(dim)
    if np.any(x0 < lower) or np.any(x0 > upper):
        raise ParameterError(f"Initial point {x0.tolist()} lies outside the bounds")

    def clamp(x: np.ndarray) -> np.ndarray:
        return np.clip(x, lower, upper)

    trace = OptimizerTrace()
    f = TracedObjective(objective, config.max_evaluations, trace)
    steps = initial_steps(lower, upper)

    converged, message = False, "max_evaluations reached"
    try:
        simplex = [x0.copy()]
        for i in range(dim):
            vertex = x0.copy()
            vertex[i] += steps[i]
            vertex = clamp(vertex)
            if vertex[i] == x0[i]:
                vertex[i] = x0[i] - steps[i]
                vertex = clamp(vertex)
            simplex.append(vertex)
        values = [f(v) for v in simplex]

        while True:
            order = np.argsort(values, kind="stable")
            simplex = [simplex[i] for i in order]
            values = [values[i] for i in order]

            if all(math.isinf(v) for v in values):
                converged, message = False, "every simplex vertex is non-finite"
                break
            spread = values[-1] - values[0]
            size = max(float(np.max(np.abs(v - simplex[0]))) for v in simplex[1:])
            if spread <= config.tolerance or size <= config.tolerance:
                converged, message = True, "simplex within tolerance"
                break

            centroid = np.mean(simplex[:-1], axis=0)
            worst = simplex[-1]

            reflected = clamp(centroid + REFLECTION * (centroid - worst))
            f_reflected = f(reflected)

            if f_reflected < values[0]:
                expanded = clamp(centroid + EXPANSION * (centroid - worst))
                f_expanded = f(expanded)
                if f_expanded < f_reflected:
                    simplex[-1], values[-1] = expanded, f_expanded
                else:
                    simplex[-1], values[-1] = reflected, f_reflected
                continue

            if f_reflected < values[-2]:
                simplex[-1], values[-1] = reflected, f_reflected
                continue

            if f_reflected < values[-1]:
                contracted = clamp(centroid + CONTRACTION * (reflected - centroid))
                f_contracted = f(contracted)
                accepted = f_contracted <= f_reflected
            else:
                contracted = clamp(centroid + CONTRACTION * (worst - centroid))
                f_contracted = f(contracted)
                accepted = f_contracted < values[-1]
            if accepted:
                simplex[-1], values[-1] = contracted, f_contracted
                continue

            best = simplex[0]
            for i in range(1, len(simplex)):
                simplex[i] = clamp(best + SHRINK * (simplex[i] - best))
                values[i] = f(simplex[i])

    except BudgetExhausted:
        pass

    if not converged:
        logger.warning(f"Nelder-Mead stopped without convergence after {len(trace)} evaluations: {message}")
    else:
        logger.debug(f"Nelder-Mead converged after {len(trace)} evaluations, value {trace.best_value}")
    return OptimizerResult.from_trace(trace, converged, message, "nelder_mead", x0)
