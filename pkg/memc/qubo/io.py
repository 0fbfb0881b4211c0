"""
QUBO and Ising text export
'qubo <N> <constant> <alpha>' header then '<i> <j> <coefficient>' per nonzero term
"""
import os

from .encoding import QuboModel
from .ising import IsingModel
from ..utils.errors import ParseError


def dumps_qubo(model: QuboModel) -> str:
    """Serialize a QUBO; alpha is written as 0 for models without a penalty weight"""
    alpha = model.penalty_weight if model.penalty_weight is not None else 0.0
    lines = [f"qubo {model.size} {model.constant!r} {alpha!r}"]
    lines.extend(f"{i} {j} {value!r}" for i, j, value in model.terms)
    return "\n".join(lines) + "\n"


def loads_qubo(text: str) -> QuboModel:
    """
    Parse a QUBO export. The variable index is not part of the format, so the
    result is a generic model.

    Raises:
        ParseError: Malformed header or term line, or a key with i > j
    """
    size = None
    constant = 0.0
    alpha = None
    coefficients = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        try:
            if size is None:
                if tokens[0] != "qubo" or len(tokens) != 4:
                    raise ParseError("expected header 'qubo <N> <constant> <alpha>'", lineno)
                size, constant, alpha = int(tokens[1]), float(tokens[2]), float(tokens[3])
                continue
            if len(tokens) != 3:
                raise ParseError(f"expected '<i> <j> <coefficient>', got '{raw.strip()}'", lineno)
            i, j, value = int(tokens[0]), int(tokens[1]), float(tokens[2])
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"bad number in '{raw.strip()}'", lineno)
        if not 0 <= i <= j < size:
            raise ParseError(f"key ({i}, {j}) violates 0 <= i <= j < {size}", lineno)
        if (i, j) in coefficients:
            raise ParseError(f"duplicate key ({i}, {j})", lineno)
        coefficients[(i, j)] = value

    if size is None:
        raise ParseError("missing 'qubo' header")
    return QuboModel(size, coefficients, constant, alpha if alpha else None)


def save_qubo(model: QuboModel, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_qubo(model))
    return path


def dumps_ising(ising: IsingModel) -> str:
    """'ising <N> <offset>' header, then 'h <i> <value>' and 'J <i> <j> <value>' lines"""
    lines = [f"ising {ising.size} {ising.offset!r}"]
    lines.extend(f"h {i} {h!r}" for i, h in sorted(ising.fields.items()))
    lines.extend(f"J {i} {j} {c!r}" for (i, j), c in sorted(ising.couplings.items()))
    return "\n".join(lines) + "\n"
