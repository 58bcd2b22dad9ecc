# src/emin_lab/core/ergotropy.py
"""
Ergotropy, passive energy, ergotropic gap, and EMIN.

EMIN (N_xi) is the ergotropy lost when subsystem A is measured in a basis that
leaves its marginal invariant:

    N_xi(rho, H) = xi(rho, H) - xi(Pi^a(rho), H)
                 = [E(rho) - E(Pi^a(rho))] + [E_p(Pi^a(rho)) - E_p(rho)].

Four routes are provided and must agree on their shared domains:
  - emin_direct          any state, any H (two passive-energy evaluations)
  - emin_pure_closed     pure states, Schmidt data of state and H
  - emin_mixed_closed    any state, Hilbert-Schmidt coordinates and Schmidt data of H
  - emin_noninteracting  H = A (x) I + I (x) B, passive energies only
"""

from typing import Optional

import numpy as np

from emin_lab.core.errors import ConsistencyError, DimensionMismatch, InteractingHamiltonian
from emin_lab.core.linalg import (
    eig_hermitian,
    eigvals_hermitian,
    expectation,
    hs_norm_sq,
    trace_product,
)
from emin_lab.core.models import (
    BipartiteState,
    ComplexMatrix,
    EminBreakdown,
    EminRole,
    ErgotropyReport,
    HamiltonianSpec,
    MeasurementBasis,
    Subsystem,
    as_operator,
)
from emin_lab.core.states import (
    hs_expand,
    marginal,
    measure_local,
    operator_schmidt,
    pure_state,
    resolve_basis,
    schmidt_basis,
    schmidt_pure,
)
from emin_lab.utils.log import get_logger

log = get_logger(__name__)


def _require_non_interacting(h: HamiltonianSpec, operation: str) -> None:
    if not h.is_non_interacting:
        raise InteractingHamiltonian(
            f"{operation} is only defined for non-interacting Hamiltonians H = A (x) I + I (x) B"
        )


# ---------------------------------------------------------------------------
# Passive energy and ergotropy
# ---------------------------------------------------------------------------

def _populations(rho, rho_m: ComplexMatrix) -> np.ndarray:
    """Descending eigenvalues; a BipartiteState supplies its clamped spectrum."""
    if isinstance(rho, BipartiteState):
        return rho.spectrum[::-1]
    return eigvals_hermitian(rho_m)[::-1]


def passive_energy(rho, h) -> float:
    """E_p = sum_n r_n(desc) e_n(asc)."""
    rho_m = as_operator(rho)
    h_m = as_operator(h)
    if rho_m.shape != h_m.shape:
        raise DimensionMismatch(f"State {rho_m.shape} and Hamiltonian {h_m.shape} differ in shape")
    populations = _populations(rho, rho_m)
    energies = eigvals_hermitian(h_m)
    return float(np.dot(populations, energies))


def passive(rho, h) -> ErgotropyReport:
    """
    Energy, passive energy, ergotropy and passive state of rho under H.

    The passive state puts the largest population on the lowest level. With
    degenerate spectra it is not unique; the energies are.
    """
    rho_m = as_operator(rho)
    h_m = as_operator(h)
    if rho_m.shape != h_m.shape:
        raise DimensionMismatch(f"State {rho_m.shape} and Hamiltonian {h_m.shape} differ in shape")
    populations = _populations(rho, rho_m)
    h_eig = eig_hermitian(h_m)
    e_p = float(np.dot(populations, h_eig.eigenvalues))
    v = h_eig.eigenvectors
    passive_state = (v * populations) @ v.conj().T
    energy = expectation(rho_m, h_m)
    return ErgotropyReport(
        energy=energy,
        passive_energy=e_p,
        ergotropy=energy - e_p,
        passive_state=passive_state,
    )


def ergotropy(rho, h) -> float:
    """xi(rho, H) = Tr(rho H) - E_p(rho)."""
    return passive(rho, h).ergotropy


def ergotropic_gap(state: BipartiteState, h: HamiltonianSpec) -> float:
    """
    Global minus local ergotropy, xi(rho, H) - [xi(rho_a, A) + xi(rho_b, B)].

    Local ergotropy is only closed-form for non-interacting H.
    """
    _require_non_interacting(h, "ergotropic_gap")
    local = ergotropy(marginal(state, Subsystem.A), h.local_a) + ergotropy(
        marginal(state, Subsystem.B), h.local_b
    )
    return ergotropy(state, h) - local


# ---------------------------------------------------------------------------
# EMIN routes
# ---------------------------------------------------------------------------

def emin_direct(
    state: BipartiteState,
    h: HamiltonianSpec,
    basis: Optional[MeasurementBasis] = None,
) -> float:
    """xi(rho, H) - xi(Pi^a(rho), H), basis defaulting to the marginal eigenbasis."""
    measured = measure_local(state, resolve_basis(state, basis))
    return ergotropy(state, h) - ergotropy(measured, h)


def emin_pure_closed(psi, h: HamiltonianSpec) -> float:
    """
    Closed form for a pure state measured in its Schmidt basis:

        sum_{i != j, l} sqrt(l_i l_j) s_l <a_j|A_l|a_i><b_j|B_l|b_i>
        + sum_k e_k(asc) (l_k(desc) - delta_k0)
    """
    n, m = h.dim_a, h.dim_b
    schmidt = schmidt_pure(psi, n, m)
    decomposition = operator_schmidt(h.total, n, m)
    lam = schmidt.coefficients
    r = lam.size
    alpha = schmidt.basis_a[:, :r]
    beta = schmidt.basis_b[:, :r]

    weights = np.sqrt(np.outer(lam, lam))
    np.fill_diagonal(weights, 0.0)
    cross = 0.0 + 0.0j
    for s_l, a_l, b_l in zip(decomposition.strengths, decomposition.factors_a, decomposition.factors_b):
        # ma[j, i] = <a_j|A_l|a_i>
        ma = alpha.conj().T @ a_l @ alpha
        mb = beta.conj().T @ b_l @ beta
        cross += s_l * np.sum(weights * ma * mb)

    energies = eigvals_hermitian(h.total)
    populations = np.zeros(n * m)
    populations[:r] = lam
    populations[0] -= 1.0
    return float(cross.real) + float(np.dot(energies, populations))


def _dephase(x: ComplexMatrix, basis: MeasurementBasis) -> ComplexMatrix:
    """sum_k P_k X P_k."""
    return sum(p @ x @ p for p in basis.projectors)


def emin_mixed_closed(
    state: BipartiteState,
    h: HamiltonianSpec,
    basis: Optional[MeasurementBasis] = None,
) -> float:
    """
    Closed form from the Hilbert-Schmidt coordinates of the state:

        sum_l s_l sum_ij t_ij [Tr(X_i A_l) - Tr(sum_k P_k X_i P_k A_l)] Tr(Y_j B_l)
        + E_p(Pi^a(rho)) - E_p(rho)

    plus the analogous x_i term with Y_0, which vanishes for the marginal
    eigenbasis and keeps the form exact for any caller-supplied basis.
    """
    basis = resolve_basis(state, basis)
    expansion = hs_expand(state)
    decomposition = operator_schmidt(h.total, state.dim_a, state.dim_b)
    xs = expansion.basis_a
    ys = expansion.basis_b

    cross = 0.0 + 0.0j
    for s_l, a_l, b_l in zip(decomposition.strengths, decomposition.factors_a, decomposition.factors_b):
        defect = np.array([
            trace_product(xs[i], a_l) - trace_product(_dephase(xs[i], basis), a_l)
            for i in range(1, len(xs))
        ])
        overlap_b = np.array([trace_product(y, b_l) for y in ys])
        cross += s_l * (defect @ expansion.t @ overlap_b[1:])
        cross += s_l * np.dot(defect, expansion.x) * overlap_b[0]

    measured = measure_local(state, basis)
    return float(cross.real) + passive_energy(measured, h) - passive_energy(state, h)


def emin_noninteracting(
    state: BipartiteState,
    h: HamiltonianSpec,
    basis: Optional[MeasurementBasis] = None,
) -> float:
    """E_p(Pi^a(rho)) - E_p(rho); non-negative for non-interacting H."""
    _require_non_interacting(h, "emin_noninteracting")
    measured = measure_local(state, resolve_basis(state, basis))
    return passive_energy(measured, h) - passive_energy(state, h)


def emin_pure_noninteracting(psi, h: HamiltonianSpec) -> float:
    """sum_k e_k(asc) l_k(desc) - e_0 for a pure state under non-interacting H."""
    _require_non_interacting(h, "emin_pure_noninteracting")
    schmidt = schmidt_pure(psi, h.dim_a, h.dim_b)
    energies = eigvals_hermitian(h.total)
    lam = schmidt.coefficients
    return float(np.dot(energies[: lam.size], lam) - energies[0])


def _maxent_sum_form(energies: np.ndarray, d: int) -> float:
    return float((np.sum(energies[:d]) - d * energies[0]) / d)


def _maxent_spacing_form(energies: np.ndarray, d: int) -> float:
    spacings = np.diff(energies[:d])
    weights = np.arange(d - 1, 0, -1, dtype=np.float64)
    return float(np.dot(weights, spacings) / d)


def emin_maxent(h: HamiltonianSpec, d: Optional[int] = None) -> float:
    """
    EMIN of the maximally entangled state under non-interacting H:

        (1/d) (sum_{k<d} e_k(asc) - d e_0) = (1/d) sum_{i=0}^{d-2} (d-1-i) s_i

    with s_i = e_{i+1} - e_i. Both forms are evaluated and must agree.
    """
    _require_non_interacting(h, "emin_maxent")
    d = min(h.dim_a, h.dim_b) if d is None else d
    if not 1 <= d <= min(h.dim_a, h.dim_b):
        raise DimensionMismatch(f"d must lie in [1, {min(h.dim_a, h.dim_b)}], got {d}")
    energies = eigvals_hermitian(h.total)
    value = _maxent_sum_form(energies, d)
    spacing = _maxent_spacing_form(energies, d)
    scale = max(1.0, float(np.max(np.abs(energies))))
    if abs(value - spacing) > 1e-10 * scale:
        raise ConsistencyError(
            f"Level-sum ({value!r}) and level-spacing ({spacing!r}) forms disagree"
        )
    return value


def emin_maxent_printed_spacing(h: HamiltonianSpec, d: Optional[int] = None) -> float:
    """
    (1/d) (sum_{i=0}^{d-1} (d-i) s_i + e_0), the spacing expression as usually
    printed. It exceeds emin_maxent by e_d / d, so it is only kept for audits.
    """
    _require_non_interacting(h, "emin_maxent_printed_spacing")
    d = min(h.dim_a, h.dim_b) if d is None else d
    energies = eigvals_hermitian(h.total)
    if energies.size < d + 1:
        raise DimensionMismatch(f"Need at least {d + 1} levels, have {energies.size}")
    spacings = np.diff(energies[: d + 1])
    weights = np.arange(d, 0, -1, dtype=np.float64)
    return float((np.dot(weights, spacings) + energies[0]) / d)


# ---------------------------------------------------------------------------
# Breakdown
# ---------------------------------------------------------------------------

def emin_breakdown(
    state: BipartiteState,
    h: HamiltonianSpec,
    basis: Optional[MeasurementBasis] = None,
    tol: float = 1e-10,
) -> EminBreakdown:
    """
    Split N_xi into the energy the measurement removes and the passive energy it adds,
    and classify the role of the correlations.
    """
    basis = resolve_basis(state, basis)
    measured = measure_local(state, basis)
    before = passive(state, h)
    after = passive(measured, h)
    n_geo = hs_norm_sq(state.rho - measured.rho)
    value = before.ergotropy - after.ergotropy
    if value > tol:
        role = EminRole.ENHANCING
    elif value < -tol:
        role = EminRole.HINDERING
    elif n_geo > tol:
        role = EminRole.LOCKED
    else:
        role = EminRole.ABSENT
    return EminBreakdown(
        energy_before=before.energy,
        energy_after=after.energy,
        passive_before=before.passive_energy,
        passive_after=after.passive_energy,
        n_geo=n_geo,
        role=role,
    )


def emin_pure_direct(psi, h: HamiltonianSpec) -> float:
    """emin_direct on |psi><psi| measured in its Schmidt basis."""
    state = pure_state(psi, h.dim_a, h.dim_b)
    return emin_direct(state, h, schmidt_basis(psi, h.dim_a, h.dim_b))
