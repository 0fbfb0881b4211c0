"""
Instance file format
Line-oriented text: 'memc <n> <m> <k>' header, 't <v>' terminals, 'e <u> <v> <cost>' edges
"""
import os
from typing import List, Set, Tuple

from .model import MulticutInstance, edge_key
from ..utils.errors import ParseError


def _tokens(line: str) -> List[str]:
    return line.split("#", 1)[0].split()


def loads_instance(text: str, name: str = "") -> MulticutInstance:
    """
    Parse an instance from text.

    Raises:
        ParseError: Malformed line, count mismatch or duplicate edge (with line number)
        ValidationError: Parsed graph violates an instance invariant
    """
    header = None
    terminals: List[int] = []
    edges: List[Tuple[int, int, float]] = []
    seen: Set[Tuple[int, int]] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokens(raw)
        if not tokens:
            continue
        tag = tokens[0]
        try:
            if header is None:
                if tag != "memc" or len(tokens) != 4:
                    raise ParseError("expected header 'memc <num_vertices> <num_edges> <k>'", lineno)
                header = tuple(int(x) for x in tokens[1:])
            elif tag == "t" and len(tokens) == 2:
                terminals.append(int(tokens[1]))
            elif tag == "e" and len(tokens) == 4:
                u, v, cost = int(tokens[1]), int(tokens[2]), float(tokens[3])
                key = edge_key(u, v)
                if key in seen:
                    raise ParseError(f"duplicate edge {key}", lineno)
                seen.add(key)
                edges.append((u, v, cost))
            else:
                raise ParseError(f"unrecognised line '{raw.strip()}'", lineno)
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"bad number in '{raw.strip()}'", lineno)

    if header is None:
        raise ParseError("missing 'memc' header")
    n, m, k = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    if len(terminals) != k:
        raise ParseError(f"header declares {k} terminals, found {len(terminals)}")

    return MulticutInstance(n, tuple(edges), tuple(terminals), name=name)


def load_instance(path: str) -> MulticutInstance:
    """Read an instance file"""
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return loads_instance(text, name=os.path.splitext(os.path.basename(path))[0])


def dumps_instance(instance: MulticutInstance) -> str:
    """Serialize an instance; costs use repr so reals round-trip exactly"""
    lines = []
    if instance.name:
        lines.append(f"# {instance.name}")
    lines.append(f"memc {instance.num_vertices} {instance.num_edges} {instance.k}")
    lines.extend(f"t {t}" for t in instance.terminals)
    lines.extend(f"e {u} {v} {cost!r}" for (u, v, cost) in instance.edges)
    return "\n".join(lines) + "\n"


def save_instance(instance: MulticutInstance, path: str) -> str:
    """Write an instance file, creating parent directories

    Returns:
        Path of the written file
    """
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_instance(instance))
    return path
