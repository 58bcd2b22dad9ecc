import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from emin_lab.core.errors import EminLabError, InvalidParameter
from emin_lab.core.hamiltonians import (
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Z,
    annihilation,
    excitation_number,
    jaynes_cummings,
    jc_interaction,
    split_local,
)
from emin_lab.core.linalg import eigvals_hermitian
from emin_lab.core.models import JcParams, RngStream, Structure
from emin_lab.core.sampling import sample_noninteracting_hamiltonian


class TestPrimitives(unittest.TestCase):
    def test_sigma_plus_raises_to_the_upper_level(self):
        excited, ground = np.array([1, 0]), np.array([0, 1])
        np.testing.assert_allclose(SIGMA_PLUS @ ground, excited)
        np.testing.assert_allclose(SIGMA_MINUS @ excited, ground)
        np.testing.assert_allclose(SIGMA_PLUS + SIGMA_MINUS, SIGMA_X)

    def test_annihilation_commutator_is_identity_below_cutoff(self):
        a = annihilation(4)
        comm = a @ a.conj().T - a.conj().T @ a
        np.testing.assert_allclose(np.diag(comm)[:-1], np.ones(3), atol=1e-12)


class TestJaynesCummings(unittest.TestCase):
    def test_uncoupled_is_noninteracting(self):
        h = jaynes_cummings(JcParams(g=0.0))
        self.assertEqual(h.structure, Structure.NON_INTERACTING)
        np.testing.assert_allclose(eigvals_hermitian(h.total), [-0.5, 0.5, 0.5, 1.5], atol=1e-12)

    def test_strong_coupling_spectrum(self):
        h = jaynes_cummings(JcParams(g=2.0))
        self.assertEqual(h.structure, Structure.INTERACTING)
        np.testing.assert_allclose(eigvals_hermitian(h.total), [-1.5, -0.5, 1.5, 2.5], atol=1e-12)

    def test_excitation_number_is_conserved(self):
        for field_dim in (2, 3, 5):
            h = jaynes_cummings(JcParams(g=0.7, field_dim=field_dim)).total
            n_exc = excitation_number(field_dim)
            np.testing.assert_allclose(h @ n_exc - n_exc @ h, 0.0, atol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(min_value=-3.0, max_value=3.0, allow_nan=False))
    def test_linear_in_coupling(self, g):
        h = jaynes_cummings(JcParams(g=g)).total
        expected = excitation_number(2) + g * jc_interaction(2)
        np.testing.assert_allclose(h, expected, atol=1e-12)

    def test_invalid_params(self):
        for g in (float("nan"), float("inf")):
            with self.assertRaises(InvalidParameter):
                JcParams(g=g)
        self.assertTrue(issubclass(InvalidParameter, EminLabError))
        self.assertTrue(issubclass(InvalidParameter, ValueError))
        with self.assertRaises(ValueError):
            JcParams(g=1.0, field_dim=1)


class TestSplitLocal(unittest.TestCase):
    def test_recovers_local_parts(self):
        h = sample_noninteracting_hamiltonian(2, 3, RngStream(11))
        split = split_local(h.total, 2, 3)
        self.assertEqual(split.structure, Structure.NON_INTERACTING)
        np.testing.assert_allclose(split.total, h.total, atol=1e-12)
        # local parts are fixed only up to a shared constant
        offset = np.trace(split.local_a - h.local_a).real / 2
        np.testing.assert_allclose(split.local_a - offset * np.eye(2), h.local_a, atol=1e-12)

    def test_coupling_term_is_interacting(self):
        split = split_local(np.kron(SIGMA_X, SIGMA_Z), 2, 2)
        self.assertEqual(split.structure, Structure.INTERACTING)

    def test_jc_matrix_at_zero_coupling(self):
        h = jaynes_cummings(JcParams(g=0.0, field_dim=3))
        self.assertTrue(split_local(h.total, 2, 3).is_non_interacting)


if __name__ == "__main__":
    unittest.main()
