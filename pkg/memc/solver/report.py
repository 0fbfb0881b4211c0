"""
Uniform solver result record
Every backend returns a SolverReport whose energy is recomputed from its bitstring
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..instances.model import CutSolution, MulticutInstance, validate_solution
from ..qubo.encoding import QuboModel, encode_assignment, qubo_energy
from ..utils.config import format_bitstring
from ..utils.errors import InfeasibleSolutionError

logger = logging.getLogger(__name__)


@dataclass
class SolverReport:
    """Solver result data structure"""
    best_bitstring: Tuple[int, ...]
    best_energy: float
    best_cut: Optional[CutSolution]
    samples_evaluated: int
    wall_time: float
    backend_name: str
    seed: Optional[int] = None
    counts: Dict[str, int] = field(default_factory=dict)
    converged: bool = True
    trace: Any = None
    extra: Dict[str, Any] = field(default_factory=dict)
    history: List[Any] = field(default_factory=list)

    @property
    def bitstring(self) -> str:
        return format_bitstring(self.best_bitstring)

    @property
    def feasible(self) -> bool:
        return self.best_cut is not None

    @property
    def total_shots(self) -> int:
        return int(sum(self.counts.values()))

    def probability_of(self, bitstrings: Iterable[str]) -> Optional[float]:
        """Empirical frequency of a set of bitstrings, None for non-sampling backends"""
        total = self.total_shots
        if total == 0:
            return None
        wanted = set(bitstrings)
        return sum(c for s, c in self.counts.items() if s in wanted) / total

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready view; wall time kept separate from deterministic fields"""
        cut = None
        if self.best_cut is not None:
            cut = {
                "assignment": {str(u): t for u, t in sorted(self.best_cut.assignment.items())},
                "cut_edges": [list(e) for e in self.best_cut.cut_edges],
                "cut_cost": self.best_cut.cut_cost,
            }
        return {
            "backend": self.backend_name,
            "seed": self.seed,
            "best_bitstring": self.bitstring,
            "best_energy": self.best_energy,
            "feasible": self.feasible,
            "cut": cut,
            "samples_evaluated": self.samples_evaluated,
            "converged": self.converged,
            "counts": dict(sorted(self.counts.items())),
            "extra": self.extra,
        }


def cut_for_bitstring(model: QuboModel, bits: Sequence[int],
                      instance: Optional[MulticutInstance]) -> Optional[CutSolution]:
    """Decoded and validated cut of a bitstring, None when infeasible or no instance"""
    if instance is None or model.index is None:
        return None
    decoded = model.index.decode(bits)
    if not decoded.feasible:
        logger.debug(f"Bitstring {format_bitstring(bits)} is infeasible: {decoded.message}")
        return None
    try:
        return validate_solution(instance, decoded.assignment)
    except InfeasibleSolutionError as e:
        logger.debug(f"Decoded assignment rejected: {e}")
        return None


def make_report(model: QuboModel, bits: Sequence[int], backend_name: str,
                wall_time: float, samples_evaluated: int,
                instance: Optional[MulticutInstance] = None,
                seed: Optional[int] = None, **kwargs) -> SolverReport:
    """Build a report, recomputing the energy and the cut from the bitstring"""
    bits = tuple(int(b) for b in np.asarray(bits).ravel())
    energy = qubo_energy(model, bits)
    return SolverReport(
        best_bitstring=bits,
        best_energy=energy,
        best_cut=cut_for_bitstring(model, bits, instance),
        samples_evaluated=int(samples_evaluated),
        wall_time=float(wall_time),
        backend_name=backend_name,
        seed=seed,
        **kwargs,
    )


def report_from_cut(model: QuboModel, cut: CutSolution, instance: MulticutInstance,
                    backend_name: str, wall_time: float, samples_evaluated: int = 1,
                    **kwargs) -> SolverReport:
    """Express a classical CutSolution as a report over the model's variables"""
    bits = encode_assignment(model.index, cut.assignment)
    return make_report(model, bits, backend_name, wall_time, samples_evaluated,
                       instance=instance, **kwargs)
