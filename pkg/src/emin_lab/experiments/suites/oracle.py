# src/emin_lab/experiments/suites/oracle.py
"""
Brute-force oracle for passive energy.

For global dimension d <= 6 the sorted pairing of populations and energies is
compared against the minimum of Tr(rho_perm H) over all d! assignments of
populations to energy levels.
"""

from itertools import permutations

import numpy as np

from emin_lab.core.ergotropy import passive, passive_energy
from emin_lab.core.linalg import eigvals_hermitian
from emin_lab.core.models import Ensemble, InvariantResult
from emin_lab.core.sampling import sample_hamiltonian, sample_state
from emin_lab.experiments.base_suite import BaseSuite

ORACLE_DIMS: list[tuple[int, int]] = [(2, 2), (2, 3), (3, 2)]
ORACLE_TOL = 1e-12


def brute_force_passive_energy(rho, h) -> float:
    """min over all permutations pi of sum_n r_pi(n) e_n."""
    populations = eigvals_hermitian(rho)
    energies = eigvals_hermitian(h)
    if populations.size > 8:
        raise ValueError(f"Brute force is limited to dimension 8, got {populations.size}")
    assignments = np.array(list(permutations(populations)))
    return float(np.min(assignments @ energies))


class OracleSuite(BaseSuite):
    suite_id = "oracle"
    description = "Sorted-pairing passive energy against exhaustive permutations"

    def invariants(self):
        return [
            ("passive_energy_oracle", self._oracle),
            ("ergotropy_nonnegative", self._nonnegative),
            ("passive_state_commutes", self._passive_commutes),
        ]

    def _instances(self, seed: int, block: int):
        n_trials = self.trials["oracle"]
        for i in range(n_trials):
            dim_a, dim_b = ORACLE_DIMS[i % len(ORACLE_DIMS)]
            stream = self.stream(seed, block, i)
            ensemble = Ensemble.PURE if i % 2 else Ensemble.MIXED
            yield sample_state(dim_a, dim_b, ensemble, stream), sample_hamiltonian(dim_a, dim_b, stream)

    def _oracle(self, seed: int) -> InvariantResult:
        deviations = [
            abs(passive_energy(state, h) - brute_force_passive_energy(state.rho, h.total))
            for state, h in self._instances(seed, 0)
        ]
        return self.tally("passive_energy_oracle", deviations, ORACLE_TOL, "dims 2x2, 2x3, 3x2")

    def _nonnegative(self, seed: int) -> InvariantResult:
        deficits = [max(0.0, -passive(state, h).ergotropy) for state, h in self._instances(seed, 1)]
        return self.tally("ergotropy_nonnegative", deficits, 1e-10)

    def _passive_commutes(self, seed: int) -> InvariantResult:
        deviations = []
        for state, h in self._instances(seed, 2):
            p = passive(state, h).passive_state
            deviations.append(float(np.max(np.abs(p @ h.total - h.total @ p))))
        return self.tally("passive_state_commutes", deviations, 1e-9)
