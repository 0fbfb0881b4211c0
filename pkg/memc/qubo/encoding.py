"""
QUBO encoding of the multiway cut problem
One binary variable per (vertex, terminal) pair, one-hot penalties and cut costs
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..instances.model import MulticutInstance
from ..utils.config import CONFIG
from ..utils.errors import CapacityError, DimensionError, ParameterError

logger = logging.getLogger(__name__)

Key = Tuple[int, int]


@dataclass(frozen=True)
class VariableIndex:
    """Bijection (vertex, terminal) <-> flat index

    In the full encoding every vertex owns k variables. In the reduced encoding the
    terminals are fixed to themselves and only non-terminal vertices own variables.
    Order is vertex ascending, then terminal in terminal order.
    """
    vertices: Tuple[int, ...]
    terminals: Tuple[int, ...]
    num_vertices: int
    reduced: bool = False

    @classmethod
    def for_instance(cls, instance: MulticutInstance, reduced: bool = False) -> "VariableIndex":
        vertices = tuple(instance.non_terminals()) if reduced else tuple(range(instance.num_vertices))
        return cls(vertices, instance.terminals, instance.num_vertices, reduced)

    @property
    def k(self) -> int:
        return len(self.terminals)

    @property
    def size(self) -> int:
        return len(self.vertices) * self.k

    @property
    def fixed(self) -> Dict[int, int]:
        """Vertices whose assignment is fixed by the encoding"""
        return {t: t for t in self.terminals} if self.reduced else {}

    def index(self, vertex: int, terminal: int) -> int:
        try:
            return self._vertex_pos[vertex] * self.k + self._terminal_pos[terminal]
        except KeyError:
            raise ParameterError(f"No variable for (vertex={vertex}, terminal={terminal})")

    def pair(self, i: int) -> Tuple[int, int]:
        if not 0 <= i < self.size:
            raise DimensionError(f"Variable index {i} outside 0..{self.size - 1}")
        return self.vertices[i // self.k], self.terminals[i % self.k]

    def __iter__(self) -> Iterator[Tuple[int, int, int]]:
        for i in range(self.size):
            u, t = self.pair(i)
            yield i, u, t

    def groups(self) -> List[List[int]]:
        """One-hot groups: the variable indices of each encoded vertex"""
        return [list(range(p * self.k, (p + 1) * self.k)) for p in range(len(self.vertices))]

    @cached_property
    def _vertex_pos(self) -> Dict[int, int]:
        return {u: p for p, u in enumerate(self.vertices)}

    @cached_property
    def _terminal_pos(self) -> Dict[int, int]:
        return {t: p for p, t in enumerate(self.terminals)}

    def encode(self, assignment: Mapping[int, int]) -> np.ndarray:
        """Bitstring of a vertex -> terminal assignment"""
        bits = np.zeros(self.size, dtype=np.int8)
        for u in self.vertices:
            bits[self.index(u, assignment[u])] = 1
        return bits

    def decode(self, bits: Sequence[int]) -> "DecodeResult":
        return decode_bitstring(self, bits)


@dataclass(frozen=True)
class DecodeResult:
    """Outcome of decoding a bitstring; infeasibility is a value"""
    assignment: Optional[Dict[int, int]]
    unassigned: Tuple[int, ...] = ()
    multi_assigned: Tuple[int, ...] = ()
    misassigned_terminals: Tuple[int, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.assignment is not None

    @property
    def message(self) -> str:
        if self.feasible:
            return "feasible"
        parts = []
        if self.unassigned:
            parts.append(f"unassigned vertices {list(self.unassigned)}")
        if self.multi_assigned:
            parts.append(f"vertices with several terminals {list(self.multi_assigned)}")
        if self.misassigned_terminals:
            parts.append(f"terminals assigned elsewhere {list(self.misassigned_terminals)}")
        return "; ".join(parts)


def decode_bitstring(index: VariableIndex, bits: Sequence[int]) -> DecodeResult:
    """
    Turn a bitstring into a vertex -> terminal map, or report why it is infeasible.

    Args:
        index: Variable index of the encoding
        bits: Bit vector of length index.size

    Returns:
        DecodeResult; assignment is None when any vertex is not exactly one-hot
        or a terminal selects another terminal

    Raises:
        DimensionError: Length mismatch
    """
    bits = np.asarray(bits).astype(int).ravel()
    if bits.shape[0] != index.size:
        raise DimensionError(f"Bitstring has length {bits.shape[0]}, encoding expects {index.size}")

    assignment: Dict[int, int] = dict(index.fixed)
    unassigned, multi, misassigned = [], [], []
    for p, u in enumerate(index.vertices):
        chosen = [index.terminals[q] for q in range(index.k) if bits[p * index.k + q]]
        if not chosen:
            unassigned.append(u)
        elif len(chosen) > 1:
            multi.append(u)
        else:
            assignment[u] = chosen[0]
            if u in index.terminals and chosen[0] != u:
                misassigned.append(u)

    if unassigned or multi or misassigned:
        return DecodeResult(None, tuple(unassigned), tuple(multi), tuple(misassigned))
    return DecodeResult(assignment)


def encode_assignment(index: VariableIndex, assignment: Mapping[int, int]) -> np.ndarray:
    """
    Inverse of decode_bitstring for a complete assignment.

    Raises:
        ParameterError: A vertex maps to something other than a terminal
        KeyError: An encoded vertex is missing from the assignment
    """
    return index.encode(assignment)


@dataclass(frozen=True)
class QuboModel:
    """Upper-triangular QUBO with an explicit constant term

    Energy of x is constant + sum over i <= j of Q_ij x_i x_j, the diagonal holding
    the linear terms.
    """
    size: int
    coefficients: Dict[Key, float]
    constant: float = 0.0
    penalty_weight: Optional[float] = None
    index: Optional[VariableIndex] = None
    _terms: Tuple[Tuple[int, int, float], ...] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        for (i, j) in self.coefficients:
            if not (0 <= i <= j < self.size):
                raise ParameterError(f"Coefficient key ({i}, {j}) violates 0 <= i <= j < {self.size}")
        if self.index is not None and self.index.size != self.size:
            raise DimensionError(f"Index covers {self.index.size} variables, model has {self.size}")
        terms = tuple((i, j, float(q)) for (i, j), q in sorted(self.coefficients.items()))
        object.__setattr__(self, "_terms", terms)

    @classmethod
    def from_coefficients(cls, size: int, coefficients: Mapping[Key, float],
                          constant: float = 0.0) -> "QuboModel":
        """Generic QUBO; (i, j) and (j, i) keys are folded onto i <= j"""
        folded: Dict[Key, float] = defaultdict(float)
        for (i, j), q in coefficients.items():
            folded[(min(i, j), max(i, j))] += q
        return cls(size, {key: q for key, q in folded.items() if q != 0.0}, float(constant))

    @property
    def terms(self) -> Tuple[Tuple[int, int, float], ...]:
        """Nonzero terms in ascending (i, j) order"""
        return self._terms

    def dense(self) -> np.ndarray:
        """Upper-triangular coefficient matrix"""
        q = np.zeros((self.size, self.size))
        for i, j, value in self._terms:
            q[i, j] = value
        return q

    def symmetric_couplings(self) -> Tuple[np.ndarray, np.ndarray]:
        """(W, d): symmetric off-diagonal couplings with zero diagonal, and linear terms"""
        q = self.dense()
        d = np.diag(q).copy()
        w = q + q.T
        np.fill_diagonal(w, 0.0)
        return w, d

    def energy(self, bits: Sequence[int]) -> float:
        return qubo_energy(self, bits)


def build_qubo(instance: MulticutInstance,
               penalty_weight: Optional[float] = None,
               reduced: bool = False) -> QuboModel:
    """
    Encode an instance as a QUBO.

    Full encoding: alpha * sum_u (1 - sum_t x_{u,t})^2 expanded with the constant
    alpha per vertex stored on the model, alpha * x_{t,t'} on every terminal-to-other-
    terminal variable, and C(u,v) x_{u,t} x_{v,t'} for t != t' on every edge.
    Reduced encoding fixes x_{t,t} = 1 and drops terminal variables; edges to a
    terminal become linear terms and edges between terminals a constant.

    Args:
        instance: Multiway cut instance
        penalty_weight: alpha, defaults to 1 + total edge cost
        reduced: Use the terminal-eliminated encoding

    Returns:
        QuboModel whose feasible energies equal cut costs

    Raises:
        ParameterError: Non-positive alpha
    """
    alpha = 1.0 + instance.total_cost if penalty_weight is None else float(penalty_weight)
    if not alpha > 0:
        raise ParameterError(f"penalty_weight must be positive, got {penalty_weight}")

    index = VariableIndex.for_instance(instance, reduced=reduced)
    k = index.k
    q: Dict[Key, float] = defaultdict(float)
    constant = 0.0

    def add(i: int, j: int, value: float) -> None:
        q[(min(i, j), max(i, j))] += value

    for u in index.vertices:
        constant += alpha
        for a in range(k):
            i = index.index(u, index.terminals[a])
            add(i, i, -alpha)
            for b in range(a + 1, k):
                add(i, index.index(u, index.terminals[b]), 2.0 * alpha)

    if not reduced:
        for t in instance.terminals:
            for other in instance.terminals:
                if other != t:
                    i = index.index(t, other)
                    add(i, i, alpha)

    encoded = set(index.vertices)
    for (u, v, cost) in instance.edges:
        if u in encoded and v in encoded:
            for t in index.terminals:
                for s in index.terminals:
                    if t != s:
                        add(index.index(u, t), index.index(v, s), cost)
        elif u in encoded or v in encoded:
            free, fixed = (u, v) if u in encoded else (v, u)
            for t in index.terminals:
                if t != fixed:
                    i = index.index(free, t)
                    add(i, i, cost)
        else:
            constant += cost

    coefficients = {key: value for key, value in q.items() if value != 0.0}
    model = QuboModel(index.size, coefficients, constant, alpha, index)
    logger.debug(
        f"Built {'reduced' if reduced else 'full'} QUBO: {model.size} variables, "
        f"{len(coefficients)} terms, alpha={alpha}"
    )
    return model


def qubo_energy(model: QuboModel, bits: Sequence[int]) -> float:
    """
    Energy of one bitstring: constant + sum Q_ij x_i x_j, summed in ascending (i, j).

    Raises:
        DimensionError: Length mismatch
    """
    x = np.asarray(bits).astype(int).ravel()
    if x.shape[0] != model.size:
        raise DimensionError(f"Bitstring has length {x.shape[0]}, model has {model.size} variables")
    energy = model.constant
    for i, j, value in model.terms:
        if x[i] and x[j]:
            energy += value
    return float(energy)


def qubo_energies(model: QuboModel, bits: np.ndarray) -> np.ndarray:
    """Vectorized energies for a (rows x N) batch of bitstrings"""
    x = np.atleast_2d(np.asarray(bits, dtype=float))
    if x.shape[1] != model.size:
        raise DimensionError(f"Batch has {x.shape[1]} columns, model has {model.size} variables")
    return model.constant + np.einsum("bi,ij,bj->b", x, model.dense(), x)


def index_bits(indices: np.ndarray, size: int) -> np.ndarray:
    """Rows of bits for basis indices; bit i of b is x_i"""
    indices = np.asarray(indices, dtype=np.int64)
    return ((indices[:, None] >> np.arange(size, dtype=np.int64)) & 1).astype(np.int8)


def energy_table(model: QuboModel, chunk: Optional[int] = None) -> np.ndarray:
    """
    Energies of all 2^N basis bitstrings, entry b for the string with x_i = bit i of b.

    Raises:
        CapacityError: N above CONFIG.BRUTE_FORCE_MAX_VARIABLES
    """
    n = model.size
    if n > CONFIG.BRUTE_FORCE_MAX_VARIABLES:
        raise CapacityError(f"{n} variables exceed the enumeration cap {CONFIG.BRUTE_FORCE_MAX_VARIABLES}")
    chunk = CONFIG.ENERGY_TABLE_CHUNK if chunk is None else chunk
    if chunk < 1:
        raise ParameterError(f"chunk must be >= 1, got {chunk}")
    total = 1 << n
    table = np.empty(total, dtype=np.float64)

    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = [((idx >> i) & 1).astype(bool) for i in range(n)]
        energies = np.full(idx.shape[0], model.constant, dtype=np.float64)
        for i, j, value in model.terms:
            if i == j:
                energies += value * bits[i]
            else:
                energies += value * (bits[i] & bits[j])
        table[start:start + idx.shape[0]] = energies
    return table


def lexicographic_rank(indices: np.ndarray, size: int) -> np.ndarray:
    """Rank of basis indices in x_0-first lexicographic order of their bitstrings"""
    indices = np.asarray(indices, dtype=np.int64)
    rank = np.zeros_like(indices)
    for i in range(size):
        rank |= ((indices >> i) & 1) << (size - 1 - i)
    return rank
