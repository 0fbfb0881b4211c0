"""
Command line interface
gen / solve / bench / report / optimizers subcommands
"""
import argparse
import logging
import math
import os
import sys
from typing import Dict, List, Optional

import numpy as np

from .bench import load_bench_config, run_suite, summarize
from .export import export_records, export_summary, export_traces, read_records, report_to_json, report_to_text
from .instances import generate_family, load_instance, save_instance, toy3, toy4
from .optim import compare_optimizers
from .photonic import ParityCost, build_generic_interferometer, default_input_state, run_circuit
from .qaoa import QaoaParams, cost_table, qaoa_expectation
from .qubo import save_qubo
from .system import BACKENDS, MulticutSystem
from .utils import CapacityError, MulticutError, setup_logging

logger = setup_logging()

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CAPACITY = 2


class MulticutArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1 like every other invalid input"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _settings(pairs: Optional[List[str]]) -> Dict[str, str]:
    settings = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise argparse.ArgumentTypeError(f"Expected key=value, got '{pair}'")
        key, value = pair.split("=", 1)
        settings[key.strip()] = value.strip()
    return settings


def cmd_gen(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    if args.toy:
        instance = toy3() if args.toy == "toy3" else toy4()
        path = save_instance(instance, os.path.join(args.out, f"{args.toy}.txt"))
        print(path)
        return EXIT_OK

    family = generate_family(
        args.count, _int_list(args.sizes), _int_list(args.k), args.density,
        (args.cost_min, args.cost_max), args.seed, integer_costs=not args.real_costs,
    )
    for instance_id, instance in family:
        print(save_instance(instance, os.path.join(args.out, f"{instance_id}.txt")))
    logger.info(f"{len(family)} instances written to {args.out}")
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    settings = _settings(args.set)
    if args.reduced:
        settings["encoding"] = "reduced"
    system = MulticutSystem(cache_enabled=False)
    report = system.solve(
        instance, args.backend, seed=args.seed, shots=args.shots,
        depth=args.depth, alpha=args.alpha, settings=settings,
    )
    if args.export_qubo:
        model = system.build_model(instance, alpha=args.alpha,
                                   reduced=report.extra.get("encoding") == "reduced")
        save_qubo(model, args.export_qubo)
    if args.format == "json":
        print(report_to_json(report))
    else:
        print(report_to_text(report))
    return EXIT_OK


def cmd_bench(args) -> int:
    config = load_bench_config(args.config)
    if args.output_dir:
        config.output_dir = args.output_dir
    if args.workers:
        config.workers = args.workers
    if args.name:
        config.name = args.name

    records = run_suite(config)
    paths = export_records(records, config.name, config.output_dir)
    summary_path = export_summary(summarize(records),
                                  os.path.join(config.output_dir, f"{config.name}.summary.csv"))
    print(paths["csv"])
    print(summary_path)
    return EXIT_OK


def cmd_report(args) -> int:
    records = read_records(args.records)
    summary = summarize(records)
    output = args.out or (os.path.splitext(args.records)[0] + ".summary.csv")
    export_summary(summary, output)
    print(summary.to_string(index=False))
    return EXIT_OK


def cmd_optimizers(args) -> int:
    instance = load_instance(args.instance)
    system = MulticutSystem(cache_enabled=False)
    model = system.build_model(instance, alpha=args.alpha, reduced=args.reduced)
    rng = np.random.default_rng(args.seed)

    if args.target == "qaoa":
        energies = cost_table(model)
        bounds = [(0.0, math.pi)] * (2 * args.depth)
        x0 = QaoaParams.initial(args.depth).to_vector()

        def objective(x):
            return qaoa_expectation(model, QaoaParams.from_vector(x), energies)
    else:
        circuit = build_generic_interferometer(model.size)
        occupation = default_input_state(model)
        state = run_circuit(circuit, occupation, np.zeros(circuit.num_parameters))
        cost = ParityCost(model, state.basis)
        bounds = [(0.0, 2.0 * math.pi)] * circuit.num_parameters
        x0 = rng.uniform(0.0, 2.0 * math.pi, size=circuit.num_parameters)

        def objective(x):
            return cost.exact(run_circuit(circuit, occupation, x, state.basis))

    results = compare_optimizers(objective, x0, bounds, args.budget, seed=args.seed)
    for method, result in results.items():
        print(f"{method:14s} best={result.best_value:.6g} evaluations={result.evaluations} "
              f"converged={result.converged}")
    if args.out:
        print(export_traces(results, args.out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = MulticutArgumentParser(prog="memc", description="Minimum edge multiway cut toolkit")
    parser.add_argument("--log-level", default=None, help="Logging level (default from MEMC_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Write random instance files")
    gen.add_argument("--out", required=True, help="Output directory")
    gen.add_argument("--count", type=int, default=20)
    gen.add_argument("--sizes", default="4,5,6,7,8,9,10", help="Comma separated |V| values")
    gen.add_argument("--k", default="2", help="Comma separated terminal counts")
    gen.add_argument("--density", type=float, default=0.3)
    gen.add_argument("--cost-min", type=float, default=1.0)
    gen.add_argument("--cost-max", type=float, default=10.0)
    gen.add_argument("--real-costs", action="store_true", help="Uniform real costs instead of integers")
    gen.add_argument("--seed", type=int, default=7)
    gen.add_argument("--toy", choices=("toy3", "toy4"), help="Write a toy fixture instead")
    gen.set_defaults(handler=cmd_gen)

    solve = sub.add_parser("solve", help="Solve one instance with one backend")
    solve.add_argument("instance", help="Instance file")
    solve.add_argument("--backend", choices=BACKENDS, default="exact")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--shots", type=int, default=None)
    solve.add_argument("--depth", type=int, default=None)
    solve.add_argument("--alpha", type=float, default=None)
    solve.add_argument("--reduced", action="store_true", help="Terminal-eliminated encoding")
    solve.add_argument("--set", action="append", metavar="KEY=VALUE", help="Backend setting")
    solve.add_argument("--format", choices=("json", "text"), default="text")
    solve.add_argument("--export-qubo", metavar="PATH", help="Also write the QUBO text file")
    solve.set_defaults(handler=cmd_solve)

    bench = sub.add_parser("bench", help="Run a benchmark suite from an INI config")
    bench.add_argument("config", help="Benchmark config file")
    bench.add_argument("--output-dir", default=None)
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--name", default=None)
    bench.set_defaults(handler=cmd_bench)

    report = sub.add_parser("report", help="Summarize a records CSV")
    report.add_argument("records", help="Records CSV written by bench")
    report.add_argument("--out", default=None, help="Summary CSV path")
    report.set_defaults(handler=cmd_report)

    optimizers = sub.add_parser("optimizers", help="Compare optimizers on one objective")
    optimizers.add_argument("instance", help="Instance file")
    optimizers.add_argument("--target", choices=("qaoa", "photonic"), default="qaoa")
    optimizers.add_argument("--budget", type=int, default=300)
    optimizers.add_argument("--depth", type=int, default=1)
    optimizers.add_argument("--alpha", type=float, default=None)
    optimizers.add_argument("--reduced", action="store_true")
    optimizers.add_argument("--seed", type=int, default=0)
    optimizers.add_argument("--out", default=None, help="Traces CSV path")
    optimizers.set_defaults(handler=cmd_optimizers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI.

    Returns:
        0 on success, 1 on invalid input, 2 when a capacity cap is exceeded
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        logging.getLogger().setLevel(getattr(logging, args.log_level.upper(), logging.INFO))

    try:
        return args.handler(args)
    except CapacityError as e:
        logger.error(f"Capacity exceeded: {e}")
        return EXIT_CAPACITY
    except (ValueError, MulticutError, argparse.ArgumentTypeError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_INVALID
