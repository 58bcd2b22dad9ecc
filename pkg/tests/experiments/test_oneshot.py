import unittest

import numpy as np

from emin_lab.core.errors import DimensionMismatch, InvalidState
from emin_lab.core.hamiltonians import SIGMA_X, SIGMA_Z
from emin_lab.core.models import Structure
from emin_lab.experiments.oneshot import basis_from_unitary, evaluate_emin, evaluate_ergotropy

LOCAL_Z = np.kron(SIGMA_Z, np.eye(2)) + np.kron(np.eye(2), SIGMA_Z)


def _projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


class TestEvaluateErgotropy(unittest.TestCase):
    def test_without_dims(self):
        evaluation = evaluate_ergotropy(np.diag([0.0, 1.0]), np.diag([0.0, 1.0]))
        self.assertAlmostEqual(evaluation.report.ergotropy, 1.0)
        self.assertIsNone(evaluation.structure)
        self.assertIsNone(evaluation.ergotropic_gap)

    def test_bell_state_gap(self):
        bell = _projector(np.array([1, 0, 0, 1]) / np.sqrt(2))
        evaluation = evaluate_ergotropy(bell, LOCAL_Z, dims=(2, 2))
        self.assertEqual(evaluation.structure, Structure.NON_INTERACTING)
        self.assertAlmostEqual(evaluation.report.ergotropy, 2.0, places=12)
        self.assertAlmostEqual(evaluation.ergotropic_gap, 2.0, places=12)

    def test_interacting_h_has_no_gap(self):
        bell = _projector(np.array([1, 0, 0, 1]) / np.sqrt(2))
        evaluation = evaluate_ergotropy(bell, np.kron(SIGMA_X, SIGMA_Z), dims=(2, 2))
        self.assertEqual(evaluation.structure, Structure.INTERACTING)
        self.assertIsNone(evaluation.ergotropic_gap)

    def test_dims_must_match(self):
        with self.assertRaises(DimensionMismatch):
            evaluate_ergotropy(np.eye(4) / 4, LOCAL_Z, dims=(2, 3))


class TestEvaluateEmin(unittest.TestCase):
    def test_pure_state_runs_every_route(self):
        rho = _projector([0.8, 0, 0, 0.6])
        evaluation = evaluate_emin(rho, LOCAL_Z, (2, 2))
        self.assertEqual(set(evaluation.routes), {"direct", "mixed_closed", "noninteracting", "pure_closed"})
        self.assertLess(evaluation.route_spread, 1e-10)
        self.assertEqual(evaluation.basis_source, "marginal eigenbasis")
        self.assertFalse(evaluation.degenerate_marginal)
        self.assertAlmostEqual(evaluation.breakdown.emin, evaluation.routes["direct"], places=12)
        self.assertIsNotNone(evaluation.bounds)

    def test_user_basis_skips_pure_route(self):
        rho = _projector([0.8, 0, 0, 0.6])
        hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        evaluation = evaluate_emin(rho, LOCAL_Z, (2, 2), basis_matrix=hadamard)
        self.assertEqual(evaluation.basis_source, "user")
        self.assertNotIn("pure_closed", evaluation.routes)
        self.assertLess(evaluation.route_spread, 1e-10)

    def test_degenerate_marginal_is_flagged(self):
        bell = _projector(np.array([1, 0, 0, 1]) / np.sqrt(2))
        with self.assertLogs("emin_lab", level="WARNING"):
            evaluation = evaluate_emin(bell, LOCAL_Z, (2, 2))
        self.assertTrue(evaluation.degenerate_marginal)
        self.assertNotIn("pure_closed", evaluation.routes)

    def test_interacting_h(self):
        rho = _projector([0.8, 0, 0, 0.6])
        evaluation = evaluate_emin(rho, np.kron(SIGMA_X, SIGMA_Z), (2, 2))
        self.assertEqual(evaluation.structure, Structure.INTERACTING)
        self.assertNotIn("noninteracting", evaluation.routes)
        self.assertLess(evaluation.route_spread, 1e-10)

    def test_beta_reaches_bounds(self):
        rho = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
        evaluation = evaluate_emin(rho, LOCAL_Z, (2, 2), beta=2.0)
        self.assertEqual(evaluation.bounds.beta, 2.0)


class TestBasisFromUnitary(unittest.TestCase):
    def test_rejects_non_orthonormal_columns(self):
        with self.assertRaises(InvalidState):
            basis_from_unitary(np.array([[1.0, 1.0], [0.0, 1.0]]), 2)

    def test_rejects_wrong_shape(self):
        with self.assertRaises(DimensionMismatch):
            basis_from_unitary(np.eye(3), 2)

    def test_projectors_follow_columns(self):
        basis = basis_from_unitary(np.eye(2)[:, ::-1], 2)
        np.testing.assert_allclose(basis.projectors[0], np.diag([0.0, 1.0]))


if __name__ == "__main__":
    unittest.main()
