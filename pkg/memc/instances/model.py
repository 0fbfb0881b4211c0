"""
Multiway cut instance model
Weighted undirected graph with a terminal set, cut solutions and their validation
"""
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from ..utils.errors import InfeasibleSolutionError, ValidationError

Edge = Tuple[int, int, float]
EdgeKey = Tuple[int, int]


def edge_key(u: int, v: int) -> EdgeKey:
    """Canonical unordered edge key (smaller id first)"""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class MulticutInstance:
    """Undirected weighted graph with an ordered terminal set

    Vertex ids are dense integers 0..n-1, terminals are kept in ascending order
    and every edge is stored as (min id, max id, cost). Construction validates
    every structural invariant, so a live instance is always usable downstream.
    """
    num_vertices: int
    edges: Tuple[Edge, ...]
    terminals: Tuple[int, ...]
    name: str = field(default="", compare=False)
    _costs: Dict[EdgeKey, float] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = tuple(
            (*edge_key(int(u), int(v)), float(c)) for (u, v, c) in self.edges
        )
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "terminals", tuple(sorted(int(t) for t in self.terminals)))
        self._validate()
        object.__setattr__(self, "_costs", {(u, v): c for (u, v, c) in self.edges})

    def _validate(self) -> None:
        """Check instance invariants"""
        n = self.num_vertices
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"num_vertices must be a positive integer, got {n}")

        seen = set()
        for (u, v, c) in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"Edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            if u == v:
                raise ValidationError(f"Self-loop on vertex {u}")
            if (u, v) in seen:
                raise ValidationError(f"Duplicate edge ({u}, {v})")
            if not c >= 0:
                raise ValidationError(f"Edge ({u}, {v}) has negative or invalid cost {c}")
            seen.add((u, v))

        if len(self.terminals) < 2:
            raise ValidationError(f"At least 2 terminals required, got {len(self.terminals)}")
        if len(set(self.terminals)) != len(self.terminals):
            raise ValidationError(f"Duplicate terminal ids in {self.terminals}")
        for t in self.terminals:
            if not 0 <= t < n:
                raise ValidationError(f"Terminal {t} is not a vertex id")

        if not nx.is_connected(self.graph()):
            raise ValidationError("Graph is not connected")

    @property
    def k(self) -> int:
        return len(self.terminals)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def total_cost(self) -> float:
        return float(sum(c for (_, _, c) in self.edges))

    def cost(self, u: int, v: int) -> float:
        return self._costs[edge_key(u, v)]

    def is_terminal(self, u: int) -> bool:
        return u in self.terminals

    def non_terminals(self) -> List[int]:
        terminal_set = set(self.terminals)
        return [u for u in range(self.num_vertices) if u not in terminal_set]

    def graph(self) -> nx.Graph:
        """networkx view of the instance, edge attribute 'cost'"""
        g = nx.Graph()
        g.add_nodes_from(range(self.num_vertices))
        for (u, v, c) in self.edges:
            g.add_edge(u, v, cost=c)
        return g

    def scaled(self, factor: float) -> "MulticutInstance":
        """Same graph with every edge cost multiplied by factor"""
        return MulticutInstance(
            self.num_vertices,
            tuple((u, v, c * factor) for (u, v, c) in self.edges),
            self.terminals,
            name=self.name,
        )

    def to_dict(self) -> Dict:
        return {
            "num_vertices": self.num_vertices,
            "edges": [[u, v, c] for (u, v, c) in self.edges],
            "terminals": list(self.terminals),
        }


@dataclass(frozen=True)
class CutSolution:
    """Terminal assignment with its recomputed cut"""
    assignment: Dict[int, int]
    cut_edges: Tuple[EdgeKey, ...]
    cut_cost: float

    def labels(self, num_vertices: int) -> List[int]:
        return [self.assignment[u] for u in range(num_vertices)]


Assignment = Union[Mapping[int, int], Sequence[int]]


def _as_mapping(instance: MulticutInstance, assignment: Assignment) -> Dict[int, int]:
    if isinstance(assignment, Mapping):
        return {int(u): int(t) for u, t in assignment.items()}
    return {u: int(t) for u, t in enumerate(assignment)}


def separates_terminals(instance: MulticutInstance, removed: Sequence[EdgeKey]) -> bool:
    """True when no component of G minus removed contains two terminals"""
    g = instance.graph()
    g.remove_edges_from(removed)
    for component in nx.connected_components(g):
        if sum(1 for t in instance.terminals if t in component) > 1:
            return False
    return True


def validate_solution(instance: MulticutInstance, assignment: Assignment) -> CutSolution:
    """Recompute the cut of a vertex → terminal assignment

    Args:
        instance: Multiway cut instance
        assignment: Mapping vertex → terminal id (or a sequence indexed by vertex)

    Returns:
        CutSolution with cut edges sorted ascending and their total cost

    Raises:
        InfeasibleSolutionError: If a vertex is missing, maps to a non-terminal,
            or a terminal is not assigned to itself
    """
    mapping = _as_mapping(instance, assignment)
    terminal_set = set(instance.terminals)

    missing = [u for u in range(instance.num_vertices) if u not in mapping]
    if missing:
        raise InfeasibleSolutionError(f"Vertices without assignment: {missing}")

    for u, t in mapping.items():
        if t not in terminal_set:
            raise InfeasibleSolutionError(f"Vertex {u} assigned to {t}, which is not a terminal")

    misassigned = [t for t in instance.terminals if mapping[t] != t]
    if misassigned:
        raise InfeasibleSolutionError(f"Terminals assigned elsewhere: {misassigned}")

    cut_edges = tuple(sorted(
        (u, v) for (u, v, _) in instance.edges if mapping[u] != mapping[v]
    ))
    cut_cost = float(sum(instance.cost(u, v) for (u, v) in cut_edges))

    if not separates_terminals(instance, cut_edges):
        raise InfeasibleSolutionError("Cut edges leave two terminals connected")

    return CutSolution(
        assignment={u: mapping[u] for u in range(instance.num_vertices)},
        cut_edges=cut_edges,
        cut_cost=cut_cost,
    )
