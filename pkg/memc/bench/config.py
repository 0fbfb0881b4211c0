"""
Benchmark configuration
INI text with a [suite] section and one [backend.<name>] section per backend
"""
import configparser
import os
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from ..instances import MulticutInstance, generate_family
from ..system import BACKENDS
from ..utils.config import CONFIG
from ..utils.errors import ParameterError, ParseError


@dataclass
class BackendSpec:
    """One backend with its raw key=value settings"""
    name: str
    settings: Dict[str, str] = field(default_factory=dict)


@dataclass
class BenchmarkConfig:
    """Instance family, backends and output location of a benchmark run"""
    backends: List[BackendSpec]
    name: str = "suite"
    count: int = 20
    sizes: Sequence[int] = (4, 5, 6, 7, 8, 9, 10)
    ks: Sequence[int] = (2,)
    density: float = 0.3
    cost_range: Tuple[float, float] = (1.0, 10.0)
    integer_costs: bool = True
    seed: int = 7
    output_dir: str = "bench_out"
    workers: int = CONFIG.MAX_WORKERS

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            ParameterError: No backend, unknown backend, maxflow with k != 2, or an invalid family setting
        """
        if not self.backends:
            raise ParameterError("Benchmark config needs at least one backend")
        for spec in self.backends:
            if spec.name not in BACKENDS:
                raise ParameterError(f"Unknown backend '{spec.name}', expected one of {BACKENDS}")
        if self.count < 1:
            raise ParameterError(f"count must be >= 1, got {self.count}")
        if not self.sizes or any(n < 2 for n in self.sizes):
            raise ParameterError(f"sizes must be non-empty and >= 2, got {list(self.sizes)}")
        if not self.ks or any(k < 2 for k in self.ks):
            raise ParameterError(f"k values must be non-empty and >= 2, got {list(self.ks)}")
        if any(spec.name == "maxflow" for spec in self.backends) and any(k != 2 for k in self.ks):
            raise ParameterError(f"maxflow backend needs every k = 2, got {list(self.ks)}")
        if self.cost_range[0] > self.cost_range[1] or self.cost_range[0] < 0:
            raise ParameterError(f"Invalid cost range {self.cost_range}")
        if self.workers < 1:
            raise ParameterError(f"workers must be >= 1, got {self.workers}")

    def instances(self) -> List[Tuple[str, MulticutInstance]]:
        return generate_family(
            self.count, self.sizes, self.ks, self.density, self.cost_range,
            self.seed, integer_costs=self.integer_costs,
        )


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.replace(",", " ").split()]


def parse_bench_config(text: str) -> BenchmarkConfig:
    """
    Parse INI text into a BenchmarkConfig.

    Raises:
        ParseError: Malformed INI or a non-numeric value
        ParameterError: Semantically invalid configuration
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text)
    except configparser.Error as e:
        raise ParseError(str(e).splitlines()[0], getattr(e, "lineno", None))

    backends = [
        BackendSpec(section.split(".", 1)[1], dict(parser.items(section)))
        for section in parser.sections() if section.startswith("backend.")
    ]
    suite = parser["suite"] if parser.has_section("suite") else {}
    try:
        kwargs = {}
        if "name" in suite:
            kwargs["name"] = suite["name"]
        if "count" in suite:
            kwargs["count"] = int(suite["count"])
        if "sizes" in suite:
            kwargs["sizes"] = _int_list(suite["sizes"])
        if "k" in suite:
            kwargs["ks"] = _int_list(suite["k"])
        if "density" in suite:
            kwargs["density"] = float(suite["density"])
        if "cost_min" in suite or "cost_max" in suite:
            kwargs["cost_range"] = (float(suite.get("cost_min", 1.0)), float(suite.get("cost_max", 10.0)))
        if "integer_costs" in suite:
            kwargs["integer_costs"] = parser.getboolean("suite", "integer_costs")
        if "seed" in suite:
            kwargs["seed"] = int(suite["seed"])
        if "output_dir" in suite:
            kwargs["output_dir"] = suite["output_dir"]
        if "workers" in suite:
            kwargs["workers"] = int(suite["workers"])
    except ValueError as e:
        raise ParseError(f"[suite] {e}")
    return BenchmarkConfig(backends=backends, **kwargs)


def load_bench_config(path: str) -> BenchmarkConfig:
    if not os.path.exists(path):
        raise ParameterError(f"Benchmark config not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return parse_bench_config(f.read())
