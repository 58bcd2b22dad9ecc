# src/emin_lab/experiments/observation.py
"""
Nonlocal energy locking: alpha|00> + beta|11> under H = sigma_x (x) sigma_z.

The state is nonlocal for every 0 < alpha < 1, yet measuring the qubit leaves its
ergotropy at 1, so EMIN vanishes while the geometric measure is 2 alpha^2 beta^2.
"""

from dataclasses import dataclass, field

import numpy as np

from emin_lab.core.ergotropy import emin_breakdown, ergotropy
from emin_lab.core.hamiltonians import SIGMA_X, SIGMA_Z
from emin_lab.core.models import EminRole, HamiltonianSpec, InvariantResult
from emin_lab.core.states import computational_basis, geometric_min, measure_local, pure_state

OBS1_TOL = 1e-10
OBS1_GEO_TOL = 1e-12


@dataclass
class Obs1Report:
    alpha: float
    ergotropy_before: float
    ergotropy_after: float
    emin: float
    n_geo: float
    role: EminRole
    checks: list[InvariantResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def obs1_state(alpha: float) -> np.ndarray:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    beta = np.sqrt(1.0 - alpha**2)
    psi = np.zeros(4, dtype=np.complex128)
    psi[0] = alpha
    psi[3] = beta
    return psi


def obs1_hamiltonian() -> HamiltonianSpec:
    return HamiltonianSpec.interacting(np.kron(SIGMA_X, SIGMA_Z), 2, 2)


def _check(name: str, value: float, expected: float, tol: float) -> InvariantResult:
    deviation = abs(value - expected)
    return InvariantResult(
        name=name,
        trials=1,
        failures=int(deviation > tol),
        max_deviation=deviation,
        tolerance=tol,
        details=f"got {value:.15g}, expected {expected:.15g}",
    )


def example_obs1(alpha: float) -> Obs1Report:
    """Evaluate the locking example and check it against the analytic values."""
    psi = obs1_state(alpha)
    state = pure_state(psi, 2, 2)
    h = obs1_hamiltonian()
    basis = computational_basis(2)

    measured = measure_local(state, basis)
    before = ergotropy(state, h)
    after = ergotropy(measured, h)
    breakdown = emin_breakdown(state, h, basis)
    n_geo = geometric_min(state, basis)
    expected_geo = 2.0 * alpha**2 * (1.0 - alpha**2)

    return Obs1Report(
        alpha=alpha,
        ergotropy_before=before,
        ergotropy_after=after,
        emin=breakdown.emin,
        n_geo=n_geo,
        role=breakdown.role,
        checks=[
            _check("xi(rho)", before, 1.0, OBS1_TOL),
            _check("xi(Pi(rho))", after, 1.0, OBS1_TOL),
            _check("N_xi", breakdown.emin, 0.0, OBS1_TOL),
            _check("N_geo", n_geo, expected_geo, OBS1_GEO_TOL),
        ],
    )
