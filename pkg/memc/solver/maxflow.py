"""
Max-flow oracles for the multiway cut
Shortest augmenting paths for k = 2 and the isolating-cut heuristic for any k
"""
from collections import deque
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

# Importar OR-Tools con manejo de errores
try:
    from ortools.graph.python import max_flow as ortools_max_flow
    ORTOOLS_AVAILABLE = True
except ImportError:
    ORTOOLS_AVAILABLE = False
    ortools_max_flow = None

from ..instances.model import CutSolution, EdgeKey, MulticutInstance, validate_solution
from ..utils.config import CONFIG, setup_logging
from ..utils.errors import ParameterError

logger = setup_logging()


def capacity_matrix(instance: MulticutInstance, extra_nodes: int = 0) -> np.ndarray:
    """Dense capacities with every undirected edge as two opposite arcs"""
    n = instance.num_vertices + extra_nodes
    capacity = np.zeros((n, n))
    for (u, v, c) in instance.edges:
        capacity[u, v] += c
        capacity[v, u] += c
    return capacity


def max_flow_bfs(capacity: np.ndarray, source: int, sink: int,
                 tol: Optional[float] = None) -> Tuple[float, Set[int]]:
    """
    Shortest augmenting path max-flow on a dense capacity matrix.

    Args:
        capacity: Non-negative arc capacities, np.inf allowed
        source: Source node
        sink: Sink node
        tol: Residual capacities at or below tol count as saturated

    Returns:
        (flow value, nodes reachable from the source in the final residual graph)
    """
    tol = CONFIG.FLOW_TOL if tol is None else tol
    residual = capacity.astype(float).copy()
    n = residual.shape[0]
    flow = 0.0

    while True:
        parent = np.full(n, -1, dtype=np.int64)
        parent[source] = source
        queue = deque([source])
        while queue and parent[sink] < 0:
            u = queue.popleft()
            for v in np.flatnonzero((residual[u] > tol) & (parent < 0)):
                parent[v] = u
                queue.append(int(v))
        if parent[sink] < 0:
            break

        bottleneck = np.inf
        v = sink
        while v != source:
            u = parent[v]
            bottleneck = min(bottleneck, residual[u, v])
            v = u
        v = sink
        while v != source:
            u = parent[v]
            residual[u, v] -= bottleneck
            residual[v, u] += bottleneck
            v = u
        flow += bottleneck

    return flow, {int(u) for u in np.flatnonzero(parent >= 0)}


def _source_side_ortools(instance: MulticutInstance, source: int, sink: int) -> Tuple[float, Set[int]]:
    if not ORTOOLS_AVAILABLE:
        raise ImportError("OR-Tools no disponible. Instalar con: pip install ortools")
    if any(c != int(c) for (_, _, c) in instance.edges):
        raise ParameterError("The OR-Tools max-flow engine needs integer edge costs")

    smf = ortools_max_flow.SimpleMaxFlow()
    for (u, v, c) in instance.edges:
        smf.add_arc_with_capacity(u, v, int(c))
        smf.add_arc_with_capacity(v, u, int(c))
    status = smf.solve(source, sink)
    if status != smf.OPTIMAL:
        raise RuntimeError(f"OR-Tools max-flow finished with status {status}")
    return float(smf.optimal_flow()), {int(u) for u in smf.get_source_side_min_cut()}


def min_cut_k2(instance: MulticutInstance, engine: str = "bfs") -> CutSolution:
    """
    Exact multiway cut for two terminals via max-flow / min-cut.

    Args:
        instance: Instance with exactly two terminals
        engine: 'bfs' (shortest augmenting paths) or 'ortools' (integer costs only)

    Returns:
        CutSolution read from the source-side reachable set

    Raises:
        ParameterError: k != 2 or unknown engine
    """
    if instance.k != 2:
        raise ParameterError(f"min_cut_k2 needs exactly 2 terminals, got {instance.k}")
    source, sink = instance.terminals

    if engine == "bfs":
        flow, side = max_flow_bfs(capacity_matrix(instance), source, sink)
    elif engine == "ortools":
        flow, side = _source_side_ortools(instance, source, sink)
    else:
        raise ParameterError(f"Unknown max-flow engine '{engine}'")

    assignment = {u: (source if u in side else sink) for u in range(instance.num_vertices)}
    solution = validate_solution(instance, assignment)
    if abs(solution.cut_cost - flow) > CONFIG.FLOW_TOL * max(1.0, flow):
        logger.error(f"Cut cost {solution.cut_cost} differs from flow value {flow}")
    logger.debug(f"Max-flow ({engine}) {flow} between terminals {source} and {sink}")
    return solution


def isolating_cut(instance: MulticutInstance, terminal: int) -> Tuple[float, List[EdgeKey]]:
    """Minimum cut separating one terminal from all others merged into a super-sink"""
    n = instance.num_vertices
    capacity = capacity_matrix(instance, extra_nodes=1)
    for t in instance.terminals:
        if t != terminal:
            capacity[t, n] = np.inf
    _, side = max_flow_bfs(capacity, terminal, n)
    edges = [(u, v) for (u, v, _) in instance.edges if (u in side) != (v in side)]
    return float(sum(instance.cost(u, v) for (u, v) in edges)), edges


def _prune(instance: MulticutInstance, removed: Set[EdgeKey]) -> Set[EdgeKey]:
    """Restore, most expensive first, every edge whose return keeps terminals apart"""
    g = instance.graph()
    g.remove_edges_from(removed)
    terminal_set = set(instance.terminals)
    kept = set(removed)

    for (u, v) in sorted(removed, key=lambda e: (-instance.cost(*e), e)):
        comp_u = nx.node_connected_component(g, u)
        if v in comp_u:
            merges_terminals = False
        else:
            comp_v = nx.node_connected_component(g, v)
            merges_terminals = bool(comp_u & terminal_set) and bool(comp_v & terminal_set)
        if not merges_terminals:
            g.add_edge(u, v)
            kept.discard((u, v))
    return kept


def greedy_isolation(instance: MulticutInstance, prune: bool = True) -> CutSolution:
    """
    Isolating-cut heuristic with a (2 - 2/k) approximation guarantee.

    Computes one isolating cut per terminal, keeps the union of all but the most
    expensive one and optionally restores redundant edges.

    Returns:
        Feasible CutSolution
    """
    cuts = [isolating_cut(instance, t) for t in instance.terminals]
    heaviest = max(range(len(cuts)), key=lambda i: (cuts[i][0], i))
    removed: Set[EdgeKey] = set()
    for i, (_, edges) in enumerate(cuts):
        if i != heaviest:
            removed.update(edges)
    if prune:
        removed = _prune(instance, removed)

    g = instance.graph()
    g.remove_edges_from(removed)
    assignment: Dict[int, int] = {}
    for component in nx.connected_components(g):
        owners = sorted(t for t in instance.terminals if t in component)
        owner = owners[0] if owners else instance.terminals[0]
        for u in component:
            assignment[u] = owner

    solution = validate_solution(instance, assignment)
    logger.debug(
        f"Greedy isolation: cuts {[c for c, _ in cuts]}, dropped terminal "
        f"{instance.terminals[heaviest]}, final cost {solution.cut_cost}"
    )
    return solution
