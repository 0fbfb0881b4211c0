"""
Test Suite para los optimizadores sin derivadas
Nelder-Mead, barrido de grilla, búsqueda aleatoria y trazas
"""
import math
import os
import sys
import unittest
from unittest.mock import patch

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from memc.optim import (
    OptimizerConfig, OptimizerTrace, TracedObjective, compare_optimizers, grid_scan,
    grids_from_bounds, minimize, nelder_mead, random_search
)
from memc.optim.trace import BudgetExhausted
from memc.utils import CONFIG, CapacityError, DimensionError, ParameterError


def quadratic(x: np.ndarray) -> float:
    return float((x[0] - 1.0) ** 2 + 2.0 * (x[1] + 0.5) ** 2)


def rosenbrock(x: np.ndarray) -> float:
    return float(100.0 * (x[1] - x[0] ** 2) ** 2 + (1.0 - x[0]) ** 2)


class TestOptimizerConfig(unittest.TestCase):

    def test_validation(self):
        with self.assertRaises(ParameterError):
            OptimizerConfig(method="bfgs")
        with self.assertRaises(ParameterError):
            OptimizerConfig(max_evaluations=0)
        with self.assertRaises(ParameterError):
            OptimizerConfig(tolerance=0.0)
        with self.assertRaises(ParameterError):
            OptimizerConfig(bounds=[(1.0, 0.0)])

    def test_bound_arrays(self):
        lower, upper = OptimizerConfig().bound_arrays(2)
        self.assertTrue(np.all(np.isinf(lower)) and np.all(np.isinf(upper)))
        config = OptimizerConfig(bounds=[(0, 1), (-2, 2)])
        lower, upper = config.bound_arrays(2)
        self.assertEqual(lower.tolist(), [0.0, -2.0])
        with self.assertRaises(DimensionError):
            config.bound_arrays(3)


class TestNelderMead(unittest.TestCase):

    def test_quadratic(self):
        config = OptimizerConfig(tolerance=1e-12, max_evaluations=500)
        result = nelder_mead(quadratic, [0.0, 0.0], config)
        self.assertTrue(result.converged)
        self.assertLessEqual(result.evaluations, 500)
        self.assertLess(result.best_value, 1e-8)
        np.testing.assert_allclose(result.best_point, [1.0, -0.5], atol=1e-4)

    def test_kink_inside_bounds(self):
        config = OptimizerConfig(bounds=[(-1.0, 1.0)], max_evaluations=500)
        result = nelder_mead(lambda x: abs(float(x[0])), [0.5], config)
        self.assertLess(result.best_value, 1e-6)
        self.assertTrue(all(abs(e.point[0]) <= 1.0 for e in result.trace))

    def test_points_stay_in_bounds(self):
        config = OptimizerConfig(bounds=[(0.0, 0.5), (0.0, 0.5)], max_evaluations=300)
        result = nelder_mead(quadratic, [0.1, 0.1], config)
        for entry in result.trace:
            self.assertTrue(0.0 <= entry.point[0] <= 0.5 and 0.0 <= entry.point[1] <= 0.5)
        self.assertLess(result.best_value, quadratic(np.array([0.1, 0.1])))

    def test_budget_exhaustion(self):
        result = nelder_mead(rosenbrock, [-1.2, 1.0], OptimizerConfig(max_evaluations=20))
        self.assertFalse(result.converged)
        self.assertEqual(result.evaluations, 20)
        self.assertEqual(result.message, "max_evaluations reached")
        self.assertTrue(math.isfinite(result.best_value))

    def test_non_finite_values_are_flagged(self):
        def partial(x):
            return float(x[0] ** 2) if x[0] < 0.3 else float("nan")

        result = nelder_mead(partial, [0.25], OptimizerConfig(max_evaluations=200))
        self.assertGreater(result.trace.flagged_count, 0)
        self.assertTrue(math.isfinite(result.best_value))
        self.assertLess(result.best_value, 0.0625)

    def test_all_infinite(self):
        result = nelder_mead(lambda x: math.inf, [0.0], OptimizerConfig(max_evaluations=50))
        self.assertFalse(result.converged)
        self.assertEqual(result.message, "every simplex vertex is non-finite")
        self.assertEqual(result.best_value, math.inf)
        self.assertEqual(result.best_point.tolist(), [0.0])

    def test_invalid_start(self):
        with self.assertRaises(ParameterError):
            nelder_mead(quadratic, [], OptimizerConfig())
        with self.assertRaises(ParameterError):
            nelder_mead(quadratic, [2.0, 0.0], OptimizerConfig(bounds=[(0, 1), (0, 1)]))

    def test_result_unpacks(self):
        point, value, trace = nelder_mead(quadratic, [0.0, 0.0], OptimizerConfig(max_evaluations=40))
        self.assertEqual(value, trace.best_value)
        np.testing.assert_array_equal(point, trace.best_point)


class TestSearch(unittest.TestCase):

    def test_grid_scan_order_and_best(self):
        result = grid_scan(lambda p: float((p[0] - 1) ** 2 + p[1] ** 2), [[0, 1, 2], [-1, 0, 1]])
        self.assertEqual(result.evaluations, 9)
        self.assertEqual(result.trace.entries[0].point, (0.0, -1.0))
        self.assertEqual(result.trace.entries[1].point, (0.0, 0.0))
        self.assertEqual(result.best_point.tolist(), [1.0, 0.0])
        self.assertEqual(result.best_value, 0.0)
        self.assertTrue(result.converged)

    def test_grid_scan_first_minimum_wins(self):
        result = grid_scan(lambda p: 1.0, [[0.0, 1.0], [2.0, 3.0]])
        self.assertEqual(result.best_point.tolist(), [0.0, 2.0])

    def test_grid_scan_errors(self):
        with self.assertRaises(ParameterError):
            grid_scan(quadratic, [])
        with self.assertRaises(ParameterError):
            grid_scan(quadratic, [[0.0], []])
        with patch.object(CONFIG, "GRID_MAX_POINTS", 8):
            with self.assertRaises(CapacityError):
                grid_scan(quadratic, [[0, 1, 2], [0, 1, 2]])

    def test_grids_from_bounds(self):
        grids = grids_from_bounds([(0.0, 1.0)], 5)
        self.assertEqual(grids[0].tolist(), [0.0, 0.25, 0.5, 0.75, 1.0])
        with self.assertRaises(ParameterError):
            grids_from_bounds([(0.0, 1.0)], 0)

    def test_random_search_deterministic(self):
        bounds = [(-2.0, 2.0), (-2.0, 2.0)]
        config = OptimizerConfig(method="random_search", bounds=bounds, max_evaluations=50, seed=3)
        a = random_search(quadratic, bounds, config)
        b = random_search(quadratic, bounds, config)
        self.assertEqual(a.evaluations, 50)
        np.testing.assert_array_equal(a.trace.values, b.trace.values)
        for entry in a.trace:
            self.assertTrue(all(-2.0 <= p <= 2.0 for p in entry.point))

    def test_random_search_errors(self):
        with self.assertRaises(ParameterError):
            random_search(quadratic, [])
        with self.assertRaises(ParameterError):
            random_search(quadratic, [(-math.inf, 1.0)])

    def test_minimize_dispatch(self):
        bounds = [(0.0, 2.0), (-1.0, 1.0)]
        config = OptimizerConfig(method="grid_scan", bounds=bounds)
        result = minimize(quadratic, [0.0, 0.0], config, grid_points=5)
        self.assertEqual(result.method, "grid_scan")
        self.assertEqual(result.evaluations, 25)
        self.assertEqual(result.best_point.tolist(), [1.0, -0.5])
        with self.assertRaises(ParameterError):
            minimize(quadratic, [0.0, 0.0], OptimizerConfig(method="random_search"))

    def test_compare_optimizers(self):
        results = compare_optimizers(quadratic, [0.0, 0.0], [(-2.0, 2.0), (-2.0, 2.0)], 100, seed=1)
        self.assertEqual(set(results), {"nelder_mead", "random_search", "grid_scan"})
        for name, result in results.items():
            with self.subTest(method=name):
                self.assertLessEqual(result.evaluations, 100)
                self.assertEqual(result.method, name)
        self.assertEqual(results["grid_scan"].evaluations, 100)
        self.assertLess(results["nelder_mead"].best_value, results["random_search"].best_value)


class TestTrace(unittest.TestCase):

    def test_running_best_and_frame(self):
        trace = OptimizerTrace()
        for point, value in (([0.0, 1.0], 3.0), ([1.0, 1.0], 5.0), ([2.0, 0.0], 1.0)):
            trace.record(point, value)
        frame = trace.to_frame()
        self.assertEqual(list(frame.columns), ["eval", "param_0", "param_1", "objective", "best_so_far"])
        self.assertEqual(frame["best_so_far"].tolist(), [3.0, 3.0, 1.0])
        self.assertEqual(trace.best_value, 1.0)
        self.assertEqual(trace.best_point.tolist(), [2.0, 0.0])

    def test_traced_objective_budget_and_errors(self):
        def explode(x):
            raise ZeroDivisionError()

        f = TracedObjective(explode, 2)
        self.assertEqual(f(np.array([0.0])), math.inf)
        self.assertEqual(f.trace.flagged_count, 1)
        f(np.array([1.0]))
        self.assertEqual(f.evaluations, 2)
        with self.assertRaises(BudgetExhausted):
            f(np.array([2.0]))

    def test_empty_frame(self):
        frame = OptimizerTrace().to_frame()
        self.assertEqual(list(frame.columns), ["eval", "objective", "best_so_far"])
        self.assertEqual(len(frame), 0)


if __name__ == "__main__":
    unittest.main()
