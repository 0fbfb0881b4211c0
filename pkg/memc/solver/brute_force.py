"""
Exhaustive oracles
Minimum over every bitstring of a QUBO, or over every terminal assignment of an instance
"""
import time
from typing import Optional

import numpy as np

from .report import SolverReport, make_report
from ..instances.model import CutSolution, MulticutInstance, validate_solution
from ..qubo.encoding import QuboModel, energy_table, index_bits, lexicographic_rank
from ..utils.config import CONFIG, setup_logging, format_duration
from ..utils.errors import CapacityError, ParameterError

logger = setup_logging()


def argmin_lexicographic(energies: np.ndarray, size: int, tol: Optional[float] = None) -> int:
    """Basis index of the minimum; ties within tol go to the smallest bitstring x_0 first"""
    tol = CONFIG.ENERGY_TOL if tol is None else tol
    candidates = np.flatnonzero(energies <= energies.min() + tol)
    ranks = lexicographic_rank(candidates, size)
    return int(candidates[np.argmin(ranks)])


def brute_force_qubo(model: QuboModel, instance: Optional[MulticutInstance] = None) -> SolverReport:
    """
    Exhaustive minimum of a QUBO.

    Args:
        model: QUBO with at most CONFIG.BRUTE_FORCE_MAX_VARIABLES variables
        instance: Optional instance, used to attach the decoded cut

    Returns:
        SolverReport over all 2^N bitstrings

    Raises:
        CapacityError: N too large
    """
    start = time.perf_counter()
    table = energy_table(model)
    best = argmin_lexicographic(table, model.size)
    bits = index_bits(np.array([best]), model.size)[0]
    elapsed = time.perf_counter() - start

    report = make_report(model, bits, "exact", elapsed, table.shape[0], instance=instance)
    logger.info(f"Brute force over {table.shape[0]} bitstrings: energy {report.best_energy} "
                f"in {format_duration(elapsed)}")
    return report


def brute_force_partition(instance: MulticutInstance, chunk: Optional[int] = None) -> CutSolution:
    """
    Minimum multiway cut by enumerating every terminal assignment of the non-terminals.

    Assignments are enumerated in product order (first non-terminal most significant,
    terminals in ascending order); the first minimum wins.

    Raises:
        CapacityError: k^(|V|-k) above CONFIG.PARTITION_MAX_ASSIGNMENTS
    """
    free = instance.non_terminals()
    k = instance.k
    total = k ** len(free)
    if total > CONFIG.PARTITION_MAX_ASSIGNMENTS:
        raise CapacityError(
            f"{total} assignments exceed the partition cap {CONFIG.PARTITION_MAX_ASSIGNMENTS}"
        )
    chunk = CONFIG.ENERGY_TABLE_CHUNK if chunk is None else chunk
    if chunk < 1:
        raise ParameterError(f"chunk must be >= 1, got {chunk}")

    # label[u] is a terminal position; terminals fixed, free vertices take mixed-radix digits
    fixed_labels = np.full(instance.num_vertices, -1, dtype=np.int64)
    for pos, t in enumerate(instance.terminals):
        fixed_labels[t] = pos
    us = np.array([u for (u, _, _) in instance.edges], dtype=np.int64)
    vs = np.array([v for (_, v, _) in instance.edges], dtype=np.int64)
    costs = np.array([c for (_, _, c) in instance.edges], dtype=np.float64)

    best_cost, best_code = np.inf, 0
    for offset in range(0, total, chunk):
        codes = np.arange(offset, min(offset + chunk, total), dtype=np.int64)
        labels = np.tile(fixed_labels, (codes.shape[0], 1))
        for p, u in enumerate(free):
            labels[:, u] = (codes // k ** (len(free) - 1 - p)) % k
        cut = (labels[:, us] != labels[:, vs]) @ costs if costs.size else np.zeros(codes.shape[0])
        j = int(np.argmin(cut))
        if cut[j] < best_cost - CONFIG.ENERGY_TOL:
            best_cost, best_code = float(cut[j]), int(codes[j])

    assignment = {t: t for t in instance.terminals}
    for p, u in enumerate(free):
        assignment[u] = instance.terminals[(best_code // k ** (len(free) - 1 - p)) % k]

    solution = validate_solution(instance, assignment)
    logger.debug(f"Partition oracle over {total} assignments: cut {solution.cut_cost}")
    return solution
