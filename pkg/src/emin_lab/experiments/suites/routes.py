# src/emin_lab/experiments/suites/routes.py
"""Pairwise agreement of the EMIN routes on their shared domains."""

from emin_lab.config import ROUTE_TOL
from emin_lab.core.ergotropy import (
    emin_breakdown,
    emin_direct,
    emin_mixed_closed,
    emin_noninteracting,
    emin_pure_closed,
    emin_pure_direct,
    emin_pure_noninteracting,
)
from emin_lab.core.models import Ensemble
from emin_lab.core.sampling import (
    haar_pure_vector,
    make_generator,
    sample_hamiltonian,
    sample_noninteracting_hamiltonian,
    sample_state,
)
from emin_lab.experiments.base_suite import BaseSuite

ROUTE_DIMS: list[tuple[int, int]] = [(2, 2), (2, 3)]


class RoutesSuite(BaseSuite):
    suite_id = "routes"
    description = "Direct, pure closed-form, mixed closed-form and non-interacting EMIN agree"

    def invariants(self):
        return [
            ("direct_vs_pure_closed", self._pure_closed),
            ("direct_vs_mixed_closed", self._mixed_closed),
            ("direct_vs_noninteracting", self._noninteracting),
            ("pure_noninteracting_formula", self._pure_noninteracting),
            ("breakdown_matches_direct", self._breakdown),
        ]

    def _dims(self, i: int) -> tuple[int, int]:
        return ROUTE_DIMS[i % len(ROUTE_DIMS)]

    def _pure_closed(self, seed: int):
        deviations = []
        for i in range(self.trials["routes"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 0, i)
            psi = haar_pure_vector(dim_a * dim_b, make_generator(stream))
            h = sample_hamiltonian(dim_a, dim_b, stream)
            deviations.append(abs(emin_pure_direct(psi, h) - emin_pure_closed(psi, h)))
        return self.tally("direct_vs_pure_closed", deviations, ROUTE_TOL, "Haar pure, interacting H")

    def _mixed_closed(self, seed: int):
        deviations = []
        for i in range(self.trials["routes"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 1, i)
            state = sample_state(dim_a, dim_b, Ensemble.MIXED, stream)
            h = sample_hamiltonian(dim_a, dim_b, stream)
            deviations.append(abs(emin_direct(state, h) - emin_mixed_closed(state, h)))
        return self.tally("direct_vs_mixed_closed", deviations, ROUTE_TOL, "Ginibre mixed, interacting H")

    def _noninteracting(self, seed: int):
        deviations = []
        for i in range(self.trials["routes"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 2, i)
            ensemble = Ensemble.PURE if i % 2 else Ensemble.MIXED
            state = sample_state(dim_a, dim_b, ensemble, stream)
            h = sample_noninteracting_hamiltonian(dim_a, dim_b, stream)
            deviations.append(abs(emin_direct(state, h) - emin_noninteracting(state, h)))
        return self.tally("direct_vs_noninteracting", deviations, ROUTE_TOL, "non-interacting H")

    def _pure_noninteracting(self, seed: int):
        deviations = []
        for i in range(self.trials["routes"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 3, i)
            psi = haar_pure_vector(dim_a * dim_b, make_generator(stream))
            h = sample_noninteracting_hamiltonian(dim_a, dim_b, stream)
            deviations.append(abs(emin_pure_direct(psi, h) - emin_pure_noninteracting(psi, h)))
        return self.tally("pure_noninteracting_formula", deviations, ROUTE_TOL)

    def _breakdown(self, seed: int):
        deviations = []
        for i in range(self.trials["routes"]):
            dim_a, dim_b = self._dims(i)
            stream = self.stream(seed, 4, i)
            state = sample_state(dim_a, dim_b, Ensemble.MIXED, stream)
            h = sample_hamiltonian(dim_a, dim_b, stream)
            deviations.append(abs(emin_breakdown(state, h).emin - emin_direct(state, h)))
        return self.tally("breakdown_matches_direct", deviations, 1e-10)
