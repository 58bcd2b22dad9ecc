# src/emin_lab/experiments/suites/theorems.py
"""
Structural properties of EMIN checked over random instances:
positivity under non-interacting H, invariance under local unitaries that commute
with H, majorization by the measurement, shift covariance, the maximally
entangled closed form, and the Gibbs-state identity with its bound audit.
"""

import numpy as np
from scipy.linalg import expm

from emin_lab.config import ROUTE_TOL
from emin_lab.core.ergotropy import (
    emin_direct,
    emin_maxent,
    emin_pure_direct,
    ergotropic_gap,
    ergotropy,
    passive_energy,
)
from emin_lab.core.linalg import expectation
from emin_lab.core.models import BipartiteState, Ensemble, HamiltonianSpec, InvariantResult
from emin_lab.core.sampling import (
    Purpose,
    make_generator,
    sample_hamiltonian,
    sample_noninteracting_hamiltonian,
    sample_state,
)
from emin_lab.core.states import (
    computational_basis,
    marginal_basis,
    maximally_entangled,
    maximally_mixed,
    measure_local,
)
from emin_lab.core.thermo import emin_bounds, gibbs_identity_sides
from emin_lab.experiments.base_suite import BaseSuite

THEOREM_DIMS: list[tuple[int, int]] = [(2, 2), (2, 3), (3, 2)]
GIBBS_BETAS: tuple[float, ...] = (0.5, 1.0, 2.0)
POSITIVITY_TOL = 1e-10
MAJORIZATION_TOL = 1e-9


class TheoremsSuite(BaseSuite):
    suite_id = "theorems"
    description = "Positivity, restricted invariance, majorization, shift covariance, Gibbs identity"

    def invariants(self):
        return [
            ("positivity_pure", lambda seed: self._positivity(seed, Ensemble.PURE, 0)),
            ("positivity_mixed", lambda seed: self._positivity(seed, Ensemble.MIXED, 1)),
            ("local_unitary_invariance", self._invariance),
            ("majorization", self._majorization),
            ("passive_energy_never_decreases", self._schur_concavity),
            ("unitality", self._unitality),
            ("shift_covariance", self._shift),
            ("maxent_matches_direct", self._maxent),
            ("gap_change_equals_emin", self._gap_change),
            ("gibbs_identity", self._gibbs),
            ("bounds_audit", self._bounds),
        ]

    def _dims(self, i: int) -> tuple[int, int]:
        return THEOREM_DIMS[i % len(THEOREM_DIMS)]

    def _positivity(self, seed: int, ensemble: Ensemble, block: int) -> InvariantResult:
        deficits = []
        for i in range(self.trials["positivity"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, block, i)
            state = sample_state(dim_a, dim_b, ensemble, stream)
            h = sample_noninteracting_hamiltonian(dim_a, dim_b, stream)
            deficits.append(max(0.0, -emin_direct(state, h)))
        return self.tally(f"positivity_{ensemble.value}", deficits, POSITIVITY_TOL, "non-interacting H")

    def _invariance(self, seed: int) -> InvariantResult:
        deviations = []
        for i in range(self.trials["invariance"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 2, i)
            state = sample_state(dim_a, dim_b, Ensemble.MIXED, stream)
            h = sample_noninteracting_hamiltonian(dim_a, dim_b, stream)
            theta = make_generator(stream, Purpose.PARAMETER).uniform(0.0, 2.0 * np.pi)
            u = np.kron(np.eye(dim_a), expm(-1j * theta * h.local_b))
            rotated = BipartiteState(dim_a, dim_b, u @ state.rho @ u.conj().T)
            deviations.append(abs(emin_direct(rotated, h) - emin_direct(state, h)))
        return self.tally("local_unitary_invariance", deviations, ROUTE_TOL, "U = I (x) exp(-i theta B)")

    def _majorization(self, seed: int) -> InvariantResult:
        excess = []
        for i in range(self.trials["majorization"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 3, i)
            ensemble = Ensemble.PURE if i % 2 else Ensemble.MIXED
            state = sample_state(dim_a, dim_b, ensemble, stream)
            measured = measure_local(state, marginal_basis(state))
            before = np.cumsum(state.spectrum[::-1])
            after = np.cumsum(measured.spectrum[::-1])
            excess.append(max(0.0, float(np.max(after - before))))
        return self.tally("majorization", excess, MAJORIZATION_TOL, "partial sums of Pi(rho) <= rho")

    def _schur_concavity(self, seed: int) -> InvariantResult:
        deficits = []
        for i in range(self.trials["majorization"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 4, i)
            state = sample_state(dim_a, dim_b, Ensemble.MIXED, stream)
            h = sample_hamiltonian(dim_a, dim_b, stream)
            measured = measure_local(state, marginal_basis(state))
            deficits.append(max(0.0, passive_energy(state, h) - passive_energy(measured, h)))
        return self.tally("passive_energy_never_decreases", deficits, POSITIVITY_TOL, "interacting H")

    def _unitality(self, seed: int) -> InvariantResult:
        deviations = []
        for dim_a, dim_b in THEOREM_DIMS:
            state = maximally_mixed(dim_a, dim_b)
            measured = measure_local(state, computational_basis(dim_a))
            deviations.append(float(np.max(np.abs(measured.rho - state.rho))))
        return self.tally("unitality", deviations, 0.0, "Pi(I/nm) == I/nm")

    def _shift(self, seed: int) -> InvariantResult:
        deviations = []
        for i in range(self.trials["shift"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 5, i)
            state = sample_state(dim_a, dim_b, Ensemble.MIXED, stream)
            h = sample_hamiltonian(dim_a, dim_b, stream)
            c = make_generator(stream, Purpose.PARAMETER).uniform(-5.0, 5.0)
            shifted = HamiltonianSpec.interacting(h.total + c * np.eye(h.dim), dim_a, dim_b)
            deviations.append(max(
                abs(expectation(state.rho, shifted.total) - expectation(state.rho, h.total) - c),
                abs(passive_energy(state, shifted) - passive_energy(state, h) - c),
                abs(ergotropy(state, shifted) - ergotropy(state, h)),
                abs(emin_direct(state, shifted) - emin_direct(state, h)),
            ))
        return self.tally("shift_covariance", deviations, POSITIVITY_TOL, "H -> H + cI")

    def _maxent(self, seed: int) -> InvariantResult:
        deviations = []
        for i in range(self.trials["maxent"]):
            d = 2 + i % 2
            stream = self.stream(seed, 6, i)
            h = sample_noninteracting_hamiltonian(d, d, stream)
            deviations.append(abs(emin_maxent(h) - emin_pure_direct(maximally_entangled(d), h)))
        return self.tally("maxent_matches_direct", deviations, ROUTE_TOL, "d = 2, 3")

    def _gap_change(self, seed: int) -> InvariantResult:
        deviations = []
        for i in range(self.trials["shift"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 7, i)
            state = sample_state(dim_a, dim_b, Ensemble.MIXED, stream)
            h = sample_noninteracting_hamiltonian(dim_a, dim_b, stream)
            measured = measure_local(state, marginal_basis(state))
            change = ergotropic_gap(state, h) - ergotropic_gap(measured, h)
            deviations.append(abs(change - emin_direct(state, h)))
        return self.tally("gap_change_equals_emin", deviations, ROUTE_TOL)

    def _gibbs(self, seed: int) -> InvariantResult:
        deviations = []
        for i in range(self.trials["gibbs"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 8, i)
            state = sample_state(dim_a, dim_b, Ensemble.MIXED, stream)
            h = sample_hamiltonian(dim_a, dim_b, stream)
            beta = GIBBS_BETAS[i % len(GIBBS_BETAS)]
            lhs, rhs = gibbs_identity_sides(state.rho, h.total, beta)
            deviations.append(abs(lhs - rhs))
        return self.tally("gibbs_identity", deviations, ROUTE_TOL, f"beta in {GIBBS_BETAS}")

    def _bounds(self, seed: int) -> InvariantResult:
        """Audit only: records which bound orientations hold, never fails."""
        n = self.trials["bounds"]
        lower = upper = ceiling = 0
        for i in range(n):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 9, i)
            state = sample_state(dim_a, dim_b, Ensemble.MIXED, stream)
            h = sample_noninteracting_hamiltonian(dim_a, dim_b, stream)
            bounds = emin_bounds(state, h, beta=1.0)
            lower += bounds.lower_holds
            upper += bounds.upper_holds
            ceiling += bounds.upper_as_ceiling_holds
        return InvariantResult(
            name="bounds_audit",
            trials=n,
            details=(
                f"lower <= beta*N held {lower}/{n}; beta*N >= upper held {upper}/{n}; "
                f"beta*N <= upper held {ceiling}/{n}"
            ),
        )
