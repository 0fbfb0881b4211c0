"""
Test Suite para el simulador QAOA
Capas de costo y mezcla, expectativa, muestreo y optimización
"""
import math
import os
import sys
import unittest

import numpy as np
from scipy.linalg import expm

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from memc.qaoa import (
    QaoaParams, Statevector, apply_cost_layer, apply_mixer_layer, prepare_plus_state,
    qaoa_expectation, qaoa_grid_oracle, qaoa_optimize, qaoa_sample, qaoa_state
)
from memc.qubo import QuboModel, build_qubo, energy_table, qubo_energy
from memc.system import MulticutSystem
from memc.utils import CONFIG, CapacityError, DimensionError, ParameterError
from tests.fixtures.data import TestDataFixtures


def random_params(rng: np.random.Generator, depth: int) -> QaoaParams:
    return QaoaParams(tuple(rng.uniform(0, math.pi, depth)), tuple(rng.uniform(0, math.pi, depth)))


def mixer_matrix(n: int, beta: float) -> np.ndarray:
    """exp(-i beta sum_i X_i) with X_i flipping bit i of the basis index"""
    dim = 1 << n
    total = np.zeros((dim, dim))
    for i in range(n):
        for b in range(dim):
            total[b ^ (1 << i), b] += 1.0
    return expm(-1j * beta * total)


class TestStatevectorLayers(unittest.TestCase):

    def test_plus_state(self):
        state = prepare_plus_state(3)
        self.assertEqual(state.num_qubits, 3)
        np.testing.assert_allclose(state.probabilities(), np.full(8, 1 / 8))

    def test_mixer_matches_matrix_exponential(self):
        rng = np.random.default_rng(5)
        for n in (1, 2, 3, 4):
            psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
            psi /= np.linalg.norm(psi)
            beta = float(rng.uniform(0, math.pi))
            with self.subTest(qubits=n):
                got = apply_mixer_layer(Statevector(psi), beta).amplitudes
                np.testing.assert_allclose(got, mixer_matrix(n, beta) @ psi, atol=1e-12)

    def test_mixer_order_does_not_matter(self):
        psi = Statevector(np.arange(8, dtype=float) / np.linalg.norm(np.arange(8)))
        a = apply_mixer_layer(psi, 0.7).amplitudes
        b = apply_mixer_layer(psi, 0.7, order=[2, 0, 1]).amplitudes
        np.testing.assert_allclose(a, b, atol=1e-12)

    def test_cost_layer_phases(self):
        state = apply_cost_layer(prepare_plus_state(1), np.array([0.0, 2.0]), 0.5)
        np.testing.assert_allclose(state.amplitudes, np.array([1.0, np.exp(-1j)]) / math.sqrt(2))
        with self.assertRaises(DimensionError):
            apply_cost_layer(prepare_plus_state(2), np.zeros(3), 0.1)

    def test_statevector_dimension(self):
        with self.assertRaises(DimensionError):
            Statevector(np.ones(3))
        with self.assertRaises(DimensionError):
            Statevector(np.ones(1))

    def test_qubit_caps(self):
        with self.assertRaises(ParameterError):
            prepare_plus_state(0)
        with self.assertRaises(CapacityError):
            qaoa_expectation(QuboModel(CONFIG.QAOA_MAX_QUBITS + 1, {}), QaoaParams.initial(1))


class TestQaoaParams(unittest.TestCase):

    def test_vector_layout(self):
        params = QaoaParams.from_vector([0.1, 0.2, 0.3, 0.4])
        self.assertEqual(params.gammas, (0.1, 0.2))
        self.assertEqual(params.betas, (0.3, 0.4))
        self.assertEqual(params.depth, 2)
        self.assertEqual(params.to_vector().tolist(), [0.1, 0.2, 0.3, 0.4])

    def test_initial_and_extended(self):
        params = QaoaParams.initial(2)
        self.assertEqual(params.gammas, (math.pi / 4, math.pi / 4))
        self.assertEqual(params.betas, (math.pi / 2, math.pi / 2))
        longer = params.extended(3)
        self.assertEqual(longer.gammas[2], 0.0)
        with self.assertRaises(ParameterError):
            longer.extended(1)

    def test_validation(self):
        with self.assertRaises(ParameterError):
            QaoaParams((), ())
        with self.assertRaises(DimensionError):
            QaoaParams((0.1,), (0.1, 0.2))
        with self.assertRaises(DimensionError):
            QaoaParams.from_vector([0.1, 0.2, 0.3])
        with self.assertRaises(ParameterError):
            QaoaParams((math.nan,), (0.1,))
        with self.assertRaises(ParameterError):
            QaoaParams.initial(0)


class TestQaoaExpectation(unittest.TestCase):

    def test_norm_preserved(self):
        rng = np.random.default_rng(11)
        models = [build_qubo(TestDataFixtures.toy3()), TestDataFixtures.random_qubo(8, seed=2)]
        for model in models:
            energies = energy_table(model)
            for depth in (1, 2, 3, 4):
                state = qaoa_state(model, random_params(rng, depth), energies)
                self.assertLess(abs(state.norm - 1.0), 1e-10)

    def test_expectation_within_energy_range(self):
        model = build_qubo(TestDataFixtures.toy4())
        energies = energy_table(model)
        rng = np.random.default_rng(3)
        for _ in range(100):
            value = qaoa_expectation(model, random_params(rng, int(rng.integers(1, 4))), energies)
            self.assertGreaterEqual(value, energies.min() - 1e-9)
            self.assertLessEqual(value, energies.max() + 1e-9)

    def test_zero_angles_give_uniform_mean(self):
        model = build_qubo(TestDataFixtures.toy3())
        value = qaoa_expectation(model, QaoaParams((0.0,), (0.0,)))
        self.assertAlmostEqual(value, float(energy_table(model).mean()), places=9)

    def test_constant_energies_only_add_a_phase(self):
        model = QuboModel(3, {}, constant=2.0)
        state = qaoa_state(model, QaoaParams((0.4, 1.1), (0.9, 0.2)))
        np.testing.assert_allclose(state.probabilities(), np.full(8, 1 / 8), atol=1e-12)

    def test_mixer_angle_period_is_pi(self):
        model = build_qubo(TestDataFixtures.toy3())
        rng = np.random.default_rng(11)
        for depth in (1, 2):
            params = random_params(rng, depth)
            shifted = QaoaParams(params.gammas, tuple(b + math.pi for b in params.betas))
            with self.subTest(depth=depth):
                self.assertAlmostEqual(qaoa_expectation(model, params),
                                       qaoa_expectation(model, shifted), places=9)

    def test_deeper_circuit_never_worse_from_extended_start(self):
        model = build_qubo(TestDataFixtures.toy3())
        oracle_params, _, _ = qaoa_grid_oracle(model)
        shallow = qaoa_optimize(model, depth=1, seed=0, initial=oracle_params)
        start = QaoaParams(tuple(shallow.extra["gammas"]), tuple(shallow.extra["betas"])).extended(2)
        self.assertAlmostEqual(qaoa_expectation(model, start), shallow.extra["expectation"], places=9)
        deep = qaoa_optimize(model, depth=2, seed=0, initial=start)
        self.assertLessEqual(deep.extra["expectation"], shallow.extra["expectation"] + 1e-9)


class TestQaoaSampling(unittest.TestCase):

    def setUp(self):
        self.toy3 = TestDataFixtures.toy3()
        self.model = build_qubo(self.toy3)

    def test_sampling_is_deterministic(self):
        params = QaoaParams((0.3,), (1.2,))
        a = qaoa_sample(self.model, params, 500, seed=9)
        b = qaoa_sample(self.model, params, 500, seed=9)
        self.assertEqual(a, b)
        self.assertEqual(sum(a.values()), 500)
        self.assertEqual(list(a), sorted(a))
        with self.assertRaises(ParameterError):
            qaoa_sample(self.model, params, 0)

    def test_grid_oracle_concentrates_on_optimum(self):
        params, best, _ = qaoa_grid_oracle(self.model)
        self.assertLess(best, float(energy_table(self.model).mean()))

        counts = qaoa_sample(self.model, params, 4000, seed=0)
        optimal = TestDataFixtures.toy3_optimal_bitstring()
        self.assertIn(optimal, counts)
        lowest = min(qubo_energy(self.model, [int(ch) for ch in s]) for s in counts)
        self.assertEqual(lowest, 1.0)
        # grid optimum puts about 0.0895 on the unique optimal string
        self.assertGreaterEqual(counts[optimal] / 4000, 0.08)

    def test_optimize_toy3(self):
        report = qaoa_optimize(self.model, depth=1, seed=3, instance=self.toy3)
        self.assertEqual(report.backend_name, "qaoa")
        self.assertEqual(report.best_energy, 1.0)
        self.assertTrue(report.feasible)
        self.assertEqual(report.total_shots, CONFIG.QAOA_SHOTS)
        self.assertEqual(len(report.history), report.samples_evaluated)
        self.assertLessEqual(report.extra["expectation"], float(energy_table(self.model).mean()))

    def test_optimize_deterministic(self):
        a = qaoa_optimize(self.model, depth=2, seed=1, shots=300)
        b = qaoa_optimize(self.model, depth=2, seed=1, shots=300)
        self.assertEqual(a.to_dict(), b.to_dict())
        with self.assertRaises(DimensionError):
            qaoa_optimize(self.model, depth=2, initial=QaoaParams.initial(1))
        with self.assertRaises(ParameterError):
            qaoa_optimize(self.model, depth=1, shots=0)

    def test_system_backend(self):
        report = MulticutSystem(cache_enabled=False).solve(self.toy3, "qaoa", seed=3, depth=1)
        self.assertEqual(report.best_energy, 1.0)
        self.assertEqual(report.extra["encoding"], "full")


if __name__ == "__main__":
    unittest.main()
