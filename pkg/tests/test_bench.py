"""
Test Suite para el banco de pruebas y la CLI
Configuración INI, ejecución de suites, resúmenes, exportación y códigos de salida
"""
import io
import json
import os
import random
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest.mock import patch

import pandas as pd

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from memc.bench import (
    RECORD_COLUMNS, BackendSpec, BenchmarkConfig, BenchmarkRecord, parse_bench_config,
    relative_gap, run_suite, summarize
)
from memc.cli import EXIT_CAPACITY, EXIT_INVALID, EXIT_OK, main
from memc.export import export_records, read_records
from memc.instances import generate_random_instance, save_instance
from memc.system import MulticutSystem
from memc.utils import CONFIG, ParameterError, ParseError
from tests.fixtures.data import TestDataFixtures

SUITE_INI = """
[suite]
name = small
count = 4
sizes = 4, 5
k = 2
seed = 3
density = 0.5

[backend.exact]

[backend.sa]
reads = 20
sweeps = 200  ; short schedule
"""


def toy_family():
    return [("n3-k2-toy3", TestDataFixtures.toy3()), ("n4-k2-toy4", TestDataFixtures.toy4())]


def classical_config(**kwargs) -> BenchmarkConfig:
    backends = [
        BackendSpec("exact"), BackendSpec("maxflow"), BackendSpec("greedy"),
        BackendSpec("sa", {"reads": "20", "sweeps": "200"}),
    ]
    return BenchmarkConfig(backends=backends, workers=2, **kwargs)


def record(instance, backend, gap, hit=True, best=1.0, opt_prob=None):
    return {"instance": instance, "backend": backend, "best_energy": best, "gap": gap,
            "hit": hit, "opt_prob": opt_prob, "wall_ms": 1.0}


class TestBenchConfig(unittest.TestCase):

    def test_parse(self):
        config = parse_bench_config(SUITE_INI)
        self.assertEqual(config.name, "small")
        self.assertEqual(config.count, 4)
        self.assertEqual(list(config.sizes), [4, 5])
        self.assertEqual(list(config.ks), [2])
        self.assertEqual([b.name for b in config.backends], ["exact", "sa"])
        self.assertEqual(config.backends[1].settings, {"reads": "20", "sweeps": "200"})
        ids = [i for i, _ in config.instances()]
        self.assertEqual(ids, ["n4-k2-000", "n5-k2-001", "n4-k2-002", "n5-k2-003"])

    def test_invalid_configs(self):
        with self.assertRaises(ParameterError):
            parse_bench_config("[suite]\ncount = 2\n")
        with self.assertRaises(ParameterError):
            parse_bench_config("[backend.bogus]\n")
        with self.assertRaises(ParameterError):
            parse_bench_config("[suite]\ncount = 0\n[backend.exact]\n")
        with self.assertRaises(ParseError):
            parse_bench_config("[suite]\ncount = many\n[backend.exact]\n")
        with self.assertRaises(ParseError):
            parse_bench_config("count = 2\n")
        with self.assertRaises(ParameterError):
            BenchmarkConfig(backends=[BackendSpec("exact"), BackendSpec("maxflow")], count=2,
                            sizes=(5,), ks=(2, 3))

    def test_relative_gap(self):
        self.assertEqual(relative_gap(3.0, 2.0), 0.5)
        self.assertEqual(relative_gap(0.5, 0.0), 0.5)


class TestRunSuite(unittest.TestCase):

    def setUp(self):
        self.system = MulticutSystem(cache_enabled=False)

    def test_toys_across_classical_backends(self):
        records = run_suite(classical_config(), instances=toy_family(), system=self.system)
        self.assertEqual([(r.instance, r.backend) for r in records], [
            (i, b) for i, _ in toy_family() for b in ("exact", "maxflow", "greedy", "sa")
        ])
        for r in records:
            with self.subTest(instance=r.instance, backend=r.backend):
                self.assertEqual(r.gap, 0.0)
                self.assertTrue(r.hit)
                self.assertIsNone(r.opt_prob)
                self.assertEqual(r.bucket, "small")
        self.assertEqual({r.seed for r in records if r.instance == "n4-k2-toy4"}, {8})

    def test_sampling_backend_reports_probability(self):
        config = BenchmarkConfig(
            backends=[BackendSpec("qaoa", {"max_evaluations": "40", "shots": "500"})], workers=1
        )
        (row,) = run_suite(config, instances=toy_family()[:1], system=self.system)
        self.assertEqual(row.opt_energy, 1.0)
        self.assertGreater(row.opt_prob, 0.0)
        self.assertLessEqual(row.opt_prob, 1.0)
        self.assertGreaterEqual(row.best_energy, 1.0)

    def test_capacity_error_skips_row(self):
        big = generate_random_instance(13, 20, 2, (1.0, 10.0), seed=1, integer_costs=True)
        config = BenchmarkConfig(backends=[BackendSpec("qaoa"), BackendSpec("maxflow")], workers=2)
        records = run_suite(config, instances=[("n13-k2-000", big)], system=self.system)
        self.assertTrue(records[0].skipped)
        self.assertIsNone(records[0].best_energy)
        self.assertIn("qubits", records[0].message)
        self.assertFalse(records[1].skipped)
        self.assertTrue(records[1].hit)
        self.assertEqual(records[0].bucket, "large")

    def test_maxflow_rows_with_three_terminals_are_skipped(self):
        three = generate_random_instance(5, 7, 3, (1.0, 10.0), seed=4, integer_costs=True)
        config = BenchmarkConfig(backends=[BackendSpec("exact"), BackendSpec("maxflow")], workers=2)
        family = [("n3-k2-toy3", TestDataFixtures.toy3()), ("n5-k3-000", three)]
        records = run_suite(config, instances=family, system=self.system)
        self.assertEqual(len(records), 4)
        self.assertEqual([r.skipped for r in records], [False, False, False, True])
        self.assertIn("2 terminals", records[3].message)
        self.assertTrue(all(r.hit for r in records[:3]))

    def test_toy3_across_every_backend_family(self):
        backends = [BackendSpec("exact"), BackendSpec("sa"), BackendSpec("qaoa"), BackendSpec("photonic")]
        config = BenchmarkConfig(backends=backends, seed=0, workers=2)
        records = run_suite(config, instances=toy_family()[:1], system=self.system)
        self.assertEqual([r.backend for r in records], ["exact", "sa", "qaoa", "photonic"])
        for r in records:
            with self.subTest(backend=r.backend):
                self.assertEqual(r.opt_energy, 1.0)
                self.assertEqual(r.gap, 0.0)
                self.assertTrue(r.hit)

    def test_sa_hits_every_small_row(self):
        config = BenchmarkConfig(backends=[BackendSpec("sa", {"reads": "50"})], count=20, seed=7)
        records = run_suite(config, system=self.system)
        self.assertEqual(len(records), 20)
        self.assertTrue(all(r.hit for r in records))


class TestSummary(unittest.TestCase):

    def test_all_hits(self):
        records = [record(f"n5-k2-{j:03d}", "sa", 0.0) for j in range(5)]
        summary = summarize(records)
        self.assertEqual(len(summary), 1)
        self.assertEqual(summary.loc[0, "hit_rate"], 1.0)
        self.assertEqual(summary.loc[0, "rows"], 5)
        self.assertEqual(summary.loc[0, "bucket"], "small")

    def test_single_record(self):
        summary = summarize([record("n6-k2-000", "greedy", 0.25, hit=False, best=5.0)])
        row = summary.iloc[0]
        self.assertEqual(row["hit_rate"], 0.0)
        self.assertEqual(row["gap_median"], 0.25)
        self.assertEqual(row["gap_q25"], 0.25)
        self.assertEqual(row["gap_q75"], 0.25)

    def test_lower_interpolation(self):
        records = [record(f"n5-k2-{j:03d}", "greedy", gap) for j, gap in enumerate([0.3, 0.0, 0.2, 0.1])]
        row = summarize(records).iloc[0]
        self.assertEqual(row["gap_median"], 0.1)
        self.assertEqual(row["gap_q25"], 0.0)
        self.assertEqual(row["gap_q75"], 0.2)

    def test_grouping_and_skipped_rows(self):
        records = [
            record("n5-k2-000", "sa", 0.0, opt_prob=None),
            record("n12-k2-001", "sa", 0.1, hit=False),
            record("n5-k2-002", "qaoa", 0.0, opt_prob=0.4),
            {"instance": "n5-k2-003", "backend": "qaoa", "best_energy": None, "gap": None,
             "hit": None, "opt_prob": None, "wall_ms": None},
        ]
        summary = summarize(records)
        self.assertEqual(list(zip(summary["backend"], summary["bucket"])),
                         [("qaoa", "small"), ("sa", "large"), ("sa", "small")])
        qaoa = summary.iloc[0]
        self.assertEqual(qaoa["rows"], 2)
        self.assertEqual(qaoa["solved"], 1)
        self.assertEqual(qaoa["opt_prob_mean"], 0.4)

    def test_permutation_invariance(self):
        records = [record(f"n{4 + j % 3}-k2-{j:03d}", ("sa", "greedy")[j % 2], 0.05 * j, hit=j % 3 == 0)
                   for j in range(12)]
        shuffled = list(records)
        random.Random(5).shuffle(shuffled)
        pd.testing.assert_frame_equal(summarize(records), summarize(shuffled))


class TestExport(unittest.TestCase):

    def setUp(self):
        self.system = MulticutSystem(cache_enabled=False)

    def test_csv_layout_and_reruns(self):
        with tempfile.TemporaryDirectory() as tmp:
            first = export_records(run_suite(classical_config(), toy_family(), self.system),
                                   "toys", os.path.join(tmp, "a"))
            second = export_records(run_suite(classical_config(), toy_family(), self.system),
                                    "toys", os.path.join(tmp, "b"))
            with open(first["csv"], encoding="utf-8") as f:
                lines = f.read().splitlines()
            self.assertEqual(lines[0], ",".join(RECORD_COLUMNS))
            self.assertEqual(len(lines), 9)
            wall = RECORD_COLUMNS.index("wall_ms")
            self.assertTrue(all(line.split(",")[wall] == "" for line in lines[1:]))
            self.assertEqual(lines[1].split(",")[:6], ["n3-k2-toy3", "exact", "1.0", "1.0", "0.0", "1"])
            for kind in ("csv", "json"):
                with open(first[kind], "rb") as a, open(second[kind], "rb") as b:
                    self.assertEqual(a.read(), b.read())

    def test_read_records_merges_wall_times(self):
        records = run_suite(classical_config(), toy_family(), self.system)
        with tempfile.TemporaryDirectory() as tmp:
            paths = export_records(records, "toys", tmp)
            loaded = read_records(paths["csv"])
            with open(paths["meta"], encoding="utf-8") as f:
                meta = json.load(f)
        self.assertEqual(len(loaded), len(records))
        self.assertEqual(meta["rows"], len(records))
        for original, row in zip(records, loaded):
            self.assertEqual(row["best_energy"], original.best_energy)
            self.assertEqual(row["hit"], original.hit)
            self.assertAlmostEqual(row["wall_ms"], original.wall_ms)

    def test_read_records_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            bad_header = os.path.join(tmp, "bad.csv")
            with open(bad_header, "w", encoding="utf-8") as f:
                f.write("a,b\n1,2\n")
            with self.assertRaises(ParseError):
                read_records(bad_header)

            bad_value = os.path.join(tmp, "value.csv")
            with open(bad_value, "w", encoding="utf-8") as f:
                f.write(",".join(RECORD_COLUMNS) + "\n")
                f.write("n4-k2-000,exact,2.0,2.0,0.0,1,,16,,7\n")
                f.write("n4-k2-001,exact,two,2.0,0.0,1,,16,,8\n")
            with self.assertRaises(ParseError) as ctx:
                read_records(bad_value)
            self.assertEqual(ctx.exception.line, 3)

    def test_record_row_hides_wall_time(self):
        row = BenchmarkRecord("n4-k2-000", "sa", 2.0, 2.0, 0.0, True, None, 10, 12.5, 7).to_row()
        self.assertEqual(list(row), RECORD_COLUMNS)
        self.assertIsNone(row["wall_ms"])


class TestCommandLine(unittest.TestCase):

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue()

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.toy3_path = save_instance(TestDataFixtures.toy3(), os.path.join(self.tmp.name, "toy3.txt"))

    def test_gen(self):
        code, out = self.run_cli("gen", "--out", os.path.join(self.tmp.name, "gen"), "--count", "3",
                                 "--sizes", "4,6", "--seed", "2")
        self.assertEqual(code, EXIT_OK)
        paths = out.split()
        self.assertEqual([os.path.basename(p) for p in paths],
                         ["n4-k2-000.txt", "n6-k2-001.txt", "n4-k2-002.txt"])
        self.assertTrue(all(os.path.exists(p) for p in paths))

        code, out = self.run_cli("gen", "--out", self.tmp.name, "--toy", "toy4")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.strip().endswith("toy4.txt"))

    def test_solve_exact_text(self):
        code, out = self.run_cli("solve", self.toy3_path, "--backend", "exact")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("cut cost: 1", out)
        self.assertIn("cut edges: 0-1", out)
        self.assertIn("feasible: yes", out)

    def test_solve_qaoa_json(self):
        code, out = self.run_cli("solve", self.toy3_path, "--backend", "qaoa", "--depth", "1",
                                 "--seed", "3", "--format", "json")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["best_energy"], 1.0)
        self.assertEqual(data["backend"], "qaoa")

    def test_solve_exports_qubo(self):
        qubo_path = os.path.join(self.tmp.name, "toy3.qubo")
        code, _ = self.run_cli("solve", self.toy3_path, "--backend", "greedy", "--export-qubo", qubo_path)
        self.assertEqual(code, EXIT_OK)
        with open(qubo_path, encoding="utf-8") as f:
            self.assertTrue(f.readline().startswith("qubo 6 "))

    def test_invalid_inputs(self):
        bad = os.path.join(self.tmp.name, "bad.txt")
        with open(bad, "w", encoding="utf-8") as f:
            f.write("memc 3 2 2\nt 0\nt 2\ne 0 1 x\ne 1 2 2\n")
        self.assertEqual(self.run_cli("solve", bad)[0], EXIT_INVALID)
        self.assertEqual(self.run_cli("solve", os.path.join(self.tmp.name, "missing.txt"))[0], EXIT_INVALID)
        self.assertEqual(self.run_cli("solve", self.toy3_path, "--set", "reads")[0], EXIT_INVALID)
        star = save_instance(TestDataFixtures.star(), os.path.join(self.tmp.name, "star.txt"))
        self.assertEqual(self.run_cli("solve", star, "--backend", "maxflow")[0], EXIT_INVALID)
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main(["solve", self.toy3_path, "--bogus"])
        self.assertEqual(ctx.exception.code, EXIT_INVALID)

    def test_capacity_exit_code(self):
        big = generate_random_instance(13, 20, 2, (1.0, 10.0), seed=1, integer_costs=True)
        path = save_instance(big, os.path.join(self.tmp.name, "big.txt"))
        self.assertEqual(self.run_cli("solve", path, "--backend", "qaoa")[0], EXIT_CAPACITY)

    def test_bench_and_report(self):
        ini = os.path.join(self.tmp.name, "suite.ini")
        with open(ini, "w", encoding="utf-8") as f:
            f.write(SUITE_INI)
        out_dir = os.path.join(self.tmp.name, "out")
        with patch.object(CONFIG, "CACHE_DIR", os.path.join(self.tmp.name, "cache")):
            code, out = self.run_cli("bench", ini, "--output-dir", out_dir, "--workers", "2")
        self.assertEqual(code, EXIT_OK)
        csv_path, summary_path = out.split()
        with open(csv_path, encoding="utf-8") as f:
            self.assertEqual(len(f.read().splitlines()), 1 + 4 * 2)
        self.assertTrue(os.path.exists(summary_path))

        report_path = os.path.join(self.tmp.name, "again.summary.csv")
        code, out = self.run_cli("report", csv_path, "--out", report_path)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("hit_rate", out)
        self.assertEqual(pd.read_csv(report_path)["rows"].sum(), 8)

    def test_optimizers(self):
        traces = os.path.join(self.tmp.name, "traces.csv")
        code, out = self.run_cli("optimizers", self.toy3_path, "--budget", "25", "--out", traces)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("nelder_mead", out)
        frame = pd.read_csv(traces)
        self.assertEqual(set(frame["method"]), {"nelder_mead", "random_search", "grid_scan"})


if __name__ == "__main__":
    unittest.main()
