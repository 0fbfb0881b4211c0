"""
Benchmark suite runner
Every (instance, backend) row solved, compared to the exact oracle and recorded
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .config import BackendSpec, BenchmarkConfig
from ..instances import MulticutInstance, parse_instance_id
from ..system import MulticutSystem, optimal_probability, setting
from ..utils.config import CONFIG, setup_logging, size_bucket
from ..utils.errors import CapacityError, ParameterError

logger = setup_logging()

RECORD_COLUMNS = [
    "instance", "backend", "best_energy", "opt_energy", "gap", "hit",
    "opt_prob", "evals", "wall_ms", "seed",
]


@dataclass
class BenchmarkRecord:
    """One (instance, backend) result row"""
    instance: str
    backend: str
    best_energy: Optional[float]
    opt_energy: Optional[float]
    gap: Optional[float]
    hit: Optional[bool]
    opt_prob: Optional[float]
    evals: Optional[int]
    wall_ms: Optional[float]
    seed: int
    status: str = "ok"
    message: str = ""

    @property
    def skipped(self) -> bool:
        return self.status != "ok"

    @property
    def bucket(self) -> str:
        try:
            n, _ = parse_instance_id(self.instance)
        except ParameterError:
            return "unknown"
        return size_bucket(n)

    def to_row(self) -> Dict:
        """Report fields only; wall time is left to the metadata file"""
        row = {key: value for key, value in asdict(self).items() if key in RECORD_COLUMNS}
        row["wall_ms"] = None
        return row


def relative_gap(best: float, optimum: float) -> float:
    """(best - opt) / opt, absolute difference when opt is 0"""
    if optimum == 0:
        return best - optimum
    return (best - optimum) / optimum


def run_row(system: MulticutSystem, instance_id: str, instance: MulticutInstance,
            spec: BackendSpec, seed: int, oracle: Optional[Dict]) -> BenchmarkRecord:
    """Solve one row; capacity errors and maxflow rows with k != 2 become skipped records"""
    opt = oracle["opt"] if oracle else None
    if spec.name == "maxflow" and instance.k != 2:
        message = f"maxflow needs exactly 2 terminals, got {instance.k}"
        logger.warning(f"Skipping {instance_id} / {spec.name}: {message}")
        return BenchmarkRecord(instance_id, spec.name, None, opt, None, None, None, None, None,
                               seed, status="skipped", message=message)
    try:
        report = system.solve(instance, spec.name, seed=seed, settings=spec.settings)
    except CapacityError as e:
        logger.warning(f"Skipping {instance_id} / {spec.name}: {e}")
        return BenchmarkRecord(instance_id, spec.name, None, opt, None, None, None, None, None,
                               seed, status="skipped", message=str(e))

    gap = hit = opt_prob = None
    if opt is not None:
        gap = relative_gap(report.best_energy, opt)
        hit = bool(abs(report.best_energy - opt) <= CONFIG.ENERGY_TOL)
        model = system.build_model(instance, alpha=setting(spec.settings, "alpha", float, None),
                                   reduced=report.extra.get("encoding") == "reduced")
        opt_prob = optimal_probability(model, report, opt)
        if report.best_energy < opt - CONFIG.ENERGY_TOL:
            logger.error(f"{instance_id} / {spec.name}: energy {report.best_energy} below optimum {opt}")

    return BenchmarkRecord(
        instance=instance_id,
        backend=spec.name,
        best_energy=report.best_energy,
        opt_energy=opt,
        gap=gap,
        hit=hit,
        opt_prob=opt_prob,
        evals=report.samples_evaluated,
        wall_ms=report.wall_time * 1000.0,
        seed=seed,
    )


def run_suite(config: BenchmarkConfig,
              instances: Optional[Sequence[Tuple[str, MulticutInstance]]] = None,
              system: Optional[MulticutSystem] = None) -> List[BenchmarkRecord]:
    """
    Run every configured backend on every instance of the family.

    Row j of the family uses seed config.seed + j for all backends. Rows run on
    config.workers threads and are returned in (instance, backend) order.

    Args:
        config: Benchmark configuration
        instances: Explicit (id, instance) pairs instead of the generated family
        system: System to solve with (a fresh one by default)

    Returns:
        Records, skipped rows included
    """
    config.validate()
    system = system or MulticutSystem()
    family = list(instances) if instances is not None else config.instances()
    logger.info(f"Benchmark '{config.name}': {len(family)} instances x {len(config.backends)} backends")

    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        oracles = list(executor.map(lambda item: system.oracle(item[1]), family))

    tasks = [
        (j, b, instance_id, instance, spec, oracles[j])
        for j, (instance_id, instance) in enumerate(family)
        for b, spec in enumerate(config.backends)
    ]

    def run(task) -> Tuple[int, int, BenchmarkRecord]:
        j, b, instance_id, instance, spec, oracle = task
        return j, b, run_row(system, instance_id, instance, spec, config.seed + j, oracle)

    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        results = list(executor.map(run, tasks))

    records = [record for _, _, record in sorted(results, key=lambda r: (r[0], r[1]))]
    hits = sum(1 for r in records if r.hit)
    logger.info(f"Benchmark '{config.name}' finished: {hits}/{len(records)} optimal rows, "
                f"{sum(1 for r in records if r.skipped)} skipped")
    return records
