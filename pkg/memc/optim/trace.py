"""
Optimizer configuration, evaluation trace and result records
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..utils.config import CONFIG
from ..utils.errors import DimensionError, ParameterError

METHODS = ("nelder_mead", "grid_scan", "random_search")

Objective = Callable[[np.ndarray], float]


@dataclass
class OptimizerConfig:
    """Derivative-free optimizer settings"""
    method: str = "nelder_mead"
    max_evaluations: int = 1000
    tolerance: float = CONFIG.OPTIM_TOLERANCE
    bounds: Optional[Sequence[Tuple[float, float]]] = None
    seed: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ParameterError(f"method must be one of {METHODS}, got '{self.method}'")
        if self.max_evaluations < 1:
            raise ParameterError(f"max_evaluations must be >= 1, got {self.max_evaluations}")
        if not self.tolerance > 0:
            raise ParameterError(f"tolerance must be positive, got {self.tolerance}")
        if self.bounds is not None:
            self.bounds = [(float(lo), float(hi)) for lo, hi in self.bounds]
            for lo, hi in self.bounds:
                if not lo <= hi:
                    raise ParameterError(f"Bounds ({lo}, {hi}) are not ordered")

    def bound_arrays(self, dim: int) -> Tuple[np.ndarray, np.ndarray]:
        """(lower, upper) arrays, infinite when unbounded"""
        if self.bounds is None:
            return np.full(dim, -np.inf), np.full(dim, np.inf)
        if len(self.bounds) != dim:
            raise DimensionError(f"{len(self.bounds)} bounds given for a {dim}-dimensional point")
        lower = np.array([lo for lo, _ in self.bounds])
        upper = np.array([hi for _, hi in self.bounds])
        return lower, upper


@dataclass(frozen=True)
class TraceEntry:
    index: int
    point: Tuple[float, ...]
    value: float
    best_so_far: float
    flagged: bool = False


class OptimizerTrace:
    """Every objective evaluation in call order, with the running best"""

    def __init__(self):
        self.entries: List[TraceEntry] = []
        self._best_index: Optional[int] = None

    def record(self, point: Sequence[float], value: float) -> float:
        """Store an evaluation; non-finite values become +inf and are flagged"""
        value = float(value)
        flagged = not math.isfinite(value)
        if flagged:
            value = math.inf
        previous = self.entries[-1].best_so_far if self.entries else math.inf
        if self._best_index is None or value < previous:
            self._best_index = len(self.entries)
        self.entries.append(TraceEntry(
            index=len(self.entries),
            point=tuple(float(p) for p in point),
            value=value,
            best_so_far=min(previous, value),
            flagged=flagged,
        ))
        return value

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[TraceEntry]:
        return iter(self.entries)

    @property
    def best_point(self) -> Optional[np.ndarray]:
        if self._best_index is None:
            return None
        return np.array(self.entries[self._best_index].point)

    @property
    def best_value(self) -> float:
        if self._best_index is None:
            return math.inf
        return self.entries[self._best_index].value

    @property
    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.entries])

    @property
    def best_so_far(self) -> np.ndarray:
        return np.array([e.best_so_far for e in self.entries])

    @property
    def flagged_count(self) -> int:
        return sum(1 for e in self.entries if e.flagged)

    def to_frame(self) -> pd.DataFrame:
        """Columns eval, param_0..param_d, objective, best_so_far"""
        dim = len(self.entries[0].point) if self.entries else 0
        rows = []
        for e in self.entries:
            row = {"eval": e.index}
            row.update({f"param_{i}": p for i, p in enumerate(e.point)})
            row["objective"] = e.value
            row["best_so_far"] = e.best_so_far
            rows.append(row)
        columns = ["eval"] + [f"param_{i}" for i in range(dim)] + ["objective", "best_so_far"]
        return pd.DataFrame(rows, columns=columns)


class BudgetExhausted(Exception):
    """Raised by TracedObjective when max_evaluations calls have been made"""


class TracedObjective:
    """Callable wrapper recording every evaluation and enforcing the budget"""

    def __init__(self, objective: Objective, max_evaluations: int,
                 trace: Optional[OptimizerTrace] = None):
        self.objective = objective
        self.max_evaluations = max_evaluations
        self.trace = trace if trace is not None else OptimizerTrace()

    @property
    def evaluations(self) -> int:
        return len(self.trace)

    def __call__(self, point: np.ndarray) -> float:
        if len(self.trace) >= self.max_evaluations:
            raise BudgetExhausted()
        point = np.asarray(point, dtype=float)
        try:
            value = self.objective(point)
        except (FloatingPointError, OverflowError, ZeroDivisionError):
            value = math.inf
        return self.trace.record(point, value)


@dataclass
class OptimizerResult:
    """Best point, best value and the full trace; failures are values"""
    best_point: np.ndarray
    best_value: float
    trace: OptimizerTrace
    converged: bool
    message: str = ""
    method: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def evaluations(self) -> int:
        return len(self.trace)

    def __iter__(self):
        yield self.best_point
        yield self.best_value
        yield self.trace

    @classmethod
    def from_trace(cls, trace: OptimizerTrace, converged: bool, message: str,
                   method: str, fallback: Sequence[float]) -> "OptimizerResult":
        point = trace.best_point if trace.best_point is not None else np.asarray(fallback, dtype=float)
        return cls(point, trace.best_value, trace, converged, message, method)
