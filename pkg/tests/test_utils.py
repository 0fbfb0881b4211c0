"""
Test Suite para utilidades
Configuración, formato, jerarquía de errores y cache de oráculos
"""
import os
import sys
import tempfile
import unittest
from unittest.mock import patch

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from memc.system import BACKENDS, MulticutSystem, setting
from memc.utils import (
    CONFIG, CapacityError, DimensionError, InfeasibleSolutionError, MEMCConfig, MulticutError,
    OracleCache, ParameterError, ParseError, ValidationError, format_bitstring, format_duration,
    obj_hash, parse_bitstring, size_bucket
)
from tests.fixtures.data import TestDataFixtures


class TestConfig(unittest.TestCase):

    def test_environment_overrides(self):
        env = {"MEMC_MAX_WORKERS": "3", "MEMC_CACHE_ENABLED": "false", "MEMC_LOG_LEVEL": "DEBUG"}
        with patch.dict(os.environ, env):
            config = MEMCConfig()
        self.assertEqual(config.MAX_WORKERS, 3)
        self.assertFalse(config.CACHE_ENABLED)
        self.assertEqual(config.LOG_LEVEL, "DEBUG")

    def test_size_bucket(self):
        self.assertEqual(size_bucket(10), "small")
        self.assertEqual(size_bucket(11), "large")
        with patch.object(CONFIG, "SIZE_BUCKETS", {"tiny": 4, "small": 10}):
            self.assertEqual(size_bucket(3), "tiny")
            self.assertEqual(size_bucket(7), "small")

    def test_setting_lookup(self):
        settings = {"reads": "50", "prune": "no", "alpha": ""}
        self.assertEqual(setting(settings, "reads", int, 1), 50)
        self.assertFalse(setting(settings, "prune", bool, True))
        self.assertIsNone(setting(settings, "alpha", float, None))
        self.assertEqual(setting(settings, "sweeps", int, 7), 7)
        with self.assertRaises(ParameterError):
            setting({"reads": "many"}, "reads", int, 1)


class TestFormatting(unittest.TestCase):

    def test_format_duration(self):
        self.assertEqual(format_duration(0.0123), "12.3ms")
        self.assertEqual(format_duration(2.5), "2.50s")
        self.assertEqual(format_duration(125), "2m 5s")

    def test_bitstrings(self):
        self.assertEqual(format_bitstring([1, 0, 0, 1]), "1001")
        self.assertEqual(parse_bitstring("1001"), (1, 0, 0, 1))
        with self.assertRaises(ParameterError):
            parse_bitstring("10a1")


class TestErrors(unittest.TestCase):

    def test_hierarchy(self):
        for cls in (ParameterError, ParseError, ValidationError, InfeasibleSolutionError,
                    DimensionError, CapacityError):
            self.assertTrue(issubclass(cls, MulticutError))
        self.assertTrue(issubclass(ParseError, ValueError))
        self.assertTrue(issubclass(InfeasibleSolutionError, ValidationError))
        self.assertFalse(issubclass(CapacityError, ValueError))

    def test_parse_error_line(self):
        error = ParseError("bad token", 4)
        self.assertEqual(error.line, 4)
        self.assertEqual(str(error), "line 4: bad token")
        self.assertIsNone(ParseError("no line").line)


class TestOracleCache(unittest.TestCase):

    def test_obj_hash(self):
        self.assertEqual(obj_hash({"a": 1, "b": [1, 2]}), obj_hash({"b": [1, 2], "a": 1}))
        self.assertNotEqual(obj_hash({"a": 1}), obj_hash({"a": 2}))

    def test_get_and_put(self):
        with tempfile.TemporaryDirectory() as tmp:
            cache = OracleCache(os.path.join(tmp, "cache"))
            toy3 = TestDataFixtures.toy3()
            self.assertIsNone(cache.get(toy3))
            self.assertTrue(cache.put(toy3, {"opt": 1.0, "method": "partition"}))
            self.assertEqual(cache.get(toy3), {"opt": 1.0, "method": "partition"})
            self.assertIsNone(cache.get(TestDataFixtures.toy4()))

    def test_system_reuses_cached_optimum(self):
        with tempfile.TemporaryDirectory() as tmp:
            with patch.object(CONFIG, "CACHE_DIR", tmp):
                system = MulticutSystem(cache_enabled=True)
                self.assertEqual(system.oracle(TestDataFixtures.star()), {"opt": 3.0, "method": "partition"})
                with patch("memc.system.brute_force_partition", side_effect=AssertionError("recomputed")):
                    self.assertEqual(system.oracle(TestDataFixtures.star())["opt"], 3.0)

    def test_oracle_falls_back_to_maxflow(self):
        system = MulticutSystem(cache_enabled=False)
        with patch.object(CONFIG, "PARTITION_MAX_ASSIGNMENTS", 4):
            entry = system.oracle(TestDataFixtures.two_paths())
            self.assertEqual(entry, {"opt": 3.0, "method": "maxflow"})
            self.assertIsNone(system.oracle(TestDataFixtures.random_instances(6, 9, 3, seed=4)[-1]))

    def test_system_status(self):
        status = MulticutSystem(cache_enabled=False).get_system_status()
        self.assertEqual(status["backends"], list(BACKENDS))
        self.assertFalse(status["cache_enabled"])
        self.assertIsNone(status["cache_dir"])


if __name__ == "__main__":
    unittest.main()
