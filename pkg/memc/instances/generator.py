"""
Instance generation for experiments
Random connected families and the canonical toy fixtures
"""
import logging
from itertools import combinations
from typing import List, Sequence, Tuple

import numpy as np

from .model import MulticutInstance
from ..utils.errors import ParameterError

logger = logging.getLogger(__name__)


def generate_random_instance(num_vertices: int,
                             num_edges: int,
                             k: int,
                             cost_range: Tuple[float, float] = (1.0, 1.0),
                             seed: int = 0,
                             integer_costs: bool = False) -> MulticutInstance:
    """
    Build a connected random instance.

    A random spanning tree (each vertex of a shuffled order attaches to a uniformly
    chosen earlier vertex) is completed with extra edges sampled without replacement
    from the remaining pairs.

    Args:
        num_vertices: Number of vertices
        num_edges: Number of edges, between num_vertices-1 and n(n-1)/2
        k: Number of terminals (2..num_vertices)
        cost_range: Closed interval for uniform edge costs
        seed: Random seed
        integer_costs: Draw integer costs from the interval instead of reals

    Returns:
        MulticutInstance, identical for identical arguments

    Raises:
        ParameterError: If the edge count or terminal count is infeasible
    """
    n = num_vertices
    max_edges = n * (n - 1) // 2
    if n < 2:
        raise ParameterError(f"num_vertices must be at least 2, got {n}")
    if num_edges < n - 1:
        raise ParameterError(f"num_edges={num_edges} cannot connect {n} vertices (need >= {n - 1})")
    if num_edges > max_edges:
        raise ParameterError(f"num_edges={num_edges} exceeds the simple-graph maximum {max_edges}")
    if not 2 <= k <= n:
        raise ParameterError(f"k must lie in [2, {n}], got {k}")
    lo, hi = cost_range
    if lo < 0 or hi < lo:
        raise ParameterError(f"Invalid cost range {cost_range}")

    rng = np.random.default_rng(seed)

    order = rng.permutation(n)
    tree = set()
    for i in range(1, n):
        parent = order[int(rng.integers(0, i))]
        u, v = int(order[i]), int(parent)
        tree.add((min(u, v), max(u, v)))

    remaining = [pair for pair in combinations(range(n), 2) if pair not in tree]
    extra = num_edges - len(tree)
    chosen = rng.choice(len(remaining), size=extra, replace=False) if extra else []
    pairs = sorted(tree | {remaining[int(i)] for i in chosen})

    if integer_costs:
        costs = rng.integers(int(lo), int(hi) + 1, size=len(pairs)).astype(float)
    else:
        costs = rng.uniform(lo, hi, size=len(pairs))

    terminals = sorted(int(t) for t in rng.choice(n, size=k, replace=False))

    instance = MulticutInstance(
        num_vertices=n,
        edges=tuple((u, v, float(c)) for (u, v), c in zip(pairs, costs)),
        terminals=tuple(terminals),
        name=f"n{n}-m{num_edges}-k{k}-s{seed}",
    )
    logger.debug(f"Generated instance {instance.name}")
    return instance


def edges_for_density(num_vertices: int, density: float) -> int:
    """Edge count between a spanning tree (0.0) and the complete graph (1.0)"""
    tree = num_vertices - 1
    max_edges = num_vertices * (num_vertices - 1) // 2
    return tree + int(round(min(max(density, 0.0), 1.0) * (max_edges - tree)))


def generate_family(count: int,
                    sizes: Sequence[int],
                    ks: Sequence[int],
                    density: float,
                    cost_range: Tuple[float, float],
                    seed: int,
                    integer_costs: bool = True) -> List[Tuple[str, MulticutInstance]]:
    """
    Build a benchmark family; instance j cycles over sizes and k values.

    Returns:
        List of (instance id, instance) with ids 'n<V>-k<k>-<j>'
    """
    if count < 1 or not sizes or not ks:
        raise ParameterError("Instance family needs count >= 1, sizes and k values")

    family = []
    for j in range(count):
        n = int(sizes[j % len(sizes)])
        k = min(int(ks[j % len(ks)]), n)
        instance = generate_random_instance(
            n, edges_for_density(n, density), k, cost_range,
            seed=seed + j, integer_costs=integer_costs
        )
        family.append((f"n{n}-k{k}-{j:03d}", instance))
    return family


def parse_instance_id(instance_id: str) -> Tuple[int, int]:
    """Recover (|V|, k) from a family instance id"""
    try:
        n_part, k_part, _ = instance_id.split("-")
        return int(n_part[1:]), int(k_part[1:])
    except ValueError:
        raise ParameterError(f"Unrecognised instance id '{instance_id}'")


def toy3() -> MulticutInstance:
    """Path t1 - a - t2 with costs 1 and 2 (optimum 1)"""
    return MulticutInstance(3, ((0, 1, 1.0), (1, 2, 2.0)), (0, 2), name="TOY-3")


def toy4() -> MulticutInstance:
    """4-cycle t1 - a - t2 - b - t1 with unit costs (optimum 2)"""
    return MulticutInstance(
        4, ((0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)), (0, 2), name="TOY-4"
    )
