import json
import unittest
from pathlib import Path

import numpy as np
import pytest

from emin_lab.core.linalg import eigvals_hermitian, partial_trace
from emin_lab.core.models import Ensemble, RngStream, Structure
from emin_lab.core.sampling import (
    Purpose,
    ginibre_density,
    haar_unitary,
    make_generator,
    sample_hamiltonian,
    sample_noninteracting_hamiltonian,
    sample_state,
    sample_state_diagonal_marginal,
)
from emin_lab.core.states import marginal
from emin_lab.experiments.stats import haar_marginal_ks

REGRESSION_FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "sampler_regression.json"


def _largest_populations(n: int, seed: int) -> list[float]:
    out = []
    for k in range(n):
        state = sample_state_diagonal_marginal(2, 2, Ensemble.PURE, RngStream(seed, k))
        out.append(float(marginal(state).real[0, 0]))
    return out


class TestStreams(unittest.TestCase):
    def test_pinned_draw_matches_fixture(self):
        fixture = json.loads(REGRESSION_FIXTURE.read_text(encoding="utf-8"))
        state = sample_state_diagonal_marginal(
            fixture["dim_a"],
            fixture["dim_b"],
            fixture["ensemble"],
            RngStream(fixture["master_seed"], fixture["sample_index"]),
        )
        # Diagonal entries do not depend on the eigenvector phases LAPACK picks.
        for k, expected in fixture["rho_diagonal"].items():
            np.testing.assert_allclose(state.rho[int(k), int(k)].real, expected, rtol=0, atol=fixture["atol"])
        self.assertAlmostEqual(float(np.trace(state.rho @ state.rho).real), 1.0, places=10)

    def test_equal_streams_give_identical_draws(self):
        a = sample_state(2, 3, Ensemble.MIXED, RngStream(7, 3))
        b = sample_state(2, 3, Ensemble.MIXED, RngStream(7, 3))
        np.testing.assert_array_equal(a.rho, b.rho)

    def test_sample_indices_differ(self):
        a = sample_state(2, 2, Ensemble.PURE, RngStream(7, 0))
        b = sample_state(2, 2, Ensemble.PURE, RngStream(7, 1))
        self.assertGreater(np.max(np.abs(a.rho - b.rho)), 1e-6)

    def test_purposes_are_independent(self):
        stream = RngStream(7, 0)
        x = make_generator(stream, Purpose.STATE).standard_normal(4)
        y = make_generator(stream, Purpose.HAMILTONIAN).standard_normal(4)
        self.assertFalse(np.allclose(x, y))

    def test_negative_seed_rejected(self):
        with self.assertRaises(ValueError):
            RngStream(-1)


class TestStates(unittest.TestCase):
    def test_pure_draw_is_pure(self):
        state = sample_state(2, 2, Ensemble.PURE, RngStream(1))
        self.assertAlmostEqual(np.trace(state.rho @ state.rho).real, 1.0, places=12)

    def test_mixed_draw_is_full_rank(self):
        state = sample_state(2, 2, "mixed", RngStream(1))
        self.assertGreater(eigvals_hermitian(state.rho)[0], 0.0)

    def test_ginibre_rank(self):
        rho = ginibre_density(4, make_generator(RngStream(2)), rank=2)
        self.assertLess(abs(eigvals_hermitian(rho)[1]), 1e-12)
        with self.assertRaises(ValueError):
            ginibre_density(4, make_generator(RngStream(2)), rank=5)

    def test_diagonal_marginal(self):
        for k in range(20):
            for ensemble in Ensemble:
                state = sample_state_diagonal_marginal(2, 3, ensemble, RngStream(3, k))
                rho_a = partial_trace(state.rho, 2, 3)
                self.assertLess(abs(rho_a[0, 1]), 1e-10)
                self.assertGreaterEqual(rho_a[0, 0].real, rho_a[1, 1].real)

    def test_rotation_keeps_spectrum(self):
        plain = sample_state(2, 2, Ensemble.MIXED, RngStream(4, 9))
        rotated = sample_state_diagonal_marginal(2, 2, Ensemble.MIXED, RngStream(4, 9))
        np.testing.assert_allclose(eigvals_hermitian(plain.rho), eigvals_hermitian(rotated.rho), atol=1e-12)

    def test_haar_unitary(self):
        u = haar_unitary(3, make_generator(RngStream(5), Purpose.UNITARY))
        np.testing.assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-12)


class TestHaarMarginalLaw(unittest.TestCase):
    def test_sampled_marginals_follow_haar_law(self):
        _, p_value = haar_marginal_ks(_largest_populations(2000, seed=2024))
        self.assertGreater(p_value, 1e-3)

    def test_uniform_populations_are_rejected(self):
        rng = np.random.default_rng(0)
        _, p_value = haar_marginal_ks(rng.uniform(0.5, 1.0, 2000))
        self.assertLess(p_value, 1e-6)

    @pytest.mark.slow
    def test_ten_thousand_samples(self):
        _, p_value = haar_marginal_ks(_largest_populations(10_000, seed=99))
        self.assertGreater(p_value, 0.01)


class TestHamiltonians(unittest.TestCase):
    def test_generic_draw_is_interacting(self):
        h = sample_hamiltonian(2, 3, RngStream(6))
        self.assertEqual(h.structure, Structure.INTERACTING)
        self.assertEqual(h.total.shape, (6, 6))

    def test_noninteracting_draw(self):
        h = sample_noninteracting_hamiltonian(3, 2, RngStream(6))
        self.assertTrue(h.is_non_interacting)
        self.assertEqual(h.local_a.shape, (3, 3))


if __name__ == "__main__":
    unittest.main()
