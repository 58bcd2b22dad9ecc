# src/emin_lab/core/thermo.py
"""
Entropies, Gibbs states, and the relative-entropy bounds on EMIN.

Logarithms are natural. Eigenvalues below ENTROPY_ZERO_CUTOFF contribute nothing
to S (0 log 0 = 0).
"""

from typing import Optional

import numpy as np

from emin_lab.config import ENTROPY_ZERO_CUTOFF, PSD_CLAMP_TOL, SUPPORT_TOL
from emin_lab.core.errors import DimensionMismatch, InvalidState, SupportViolation
from emin_lab.core.ergotropy import ergotropy, passive
from emin_lab.core.linalg import eig_hermitian, eigvals_hermitian, expectation, func_hermitian
from emin_lab.core.models import (
    BipartiteState,
    ComplexMatrix,
    EminBounds,
    HamiltonianSpec,
    MeasurementBasis,
    as_operator,
)
from emin_lab.core.states import measure_local, resolve_basis


def _clamped_spectrum(rho: ComplexMatrix) -> np.ndarray:
    values = eigvals_hermitian(rho)
    if values.size and values[0] < -PSD_CLAMP_TOL:
        raise InvalidState(f"Operator has a negative eigenvalue {values[0]:.3e}")
    return np.clip(values, 0.0, None)


def _check_beta(beta: float) -> None:
    if not np.isfinite(beta) or beta <= 0:
        raise ValueError(f"beta must be positive and finite, got {beta}")


def entropy(rho) -> float:
    """Von Neumann entropy S = -Tr(rho log rho)."""
    p = rho.spectrum if isinstance(rho, BipartiteState) else _clamped_spectrum(as_operator(rho))
    p = p[p > ENTROPY_ZERO_CUTOFF]
    return float(-np.sum(p * np.log(p)))


def relative_entropy(a, b) -> float:
    """
    D(a || b) = Tr[a (log a - log b)].

    Raises:
        SupportViolation: a has weight above SUPPORT_TOL on the kernel of b.
    """
    a_m = as_operator(a)
    b_m = as_operator(b)
    if a_m.shape != b_m.shape:
        raise DimensionMismatch(f"Shapes differ: {a_m.shape} vs {b_m.shape}")
    b_eig = eig_hermitian(b_m)
    if b_eig.eigenvalues.size and b_eig.eigenvalues[0] < -PSD_CLAMP_TOL:
        raise InvalidState(f"Second argument has a negative eigenvalue {b_eig.eigenvalues[0]:.3e}")
    w = b_eig.eigenvectors
    # <w_k| a |w_k>
    weights = np.einsum("ik,ij,jk->k", w.conj(), a_m, w).real
    support = b_eig.eigenvalues > ENTROPY_ZERO_CUTOFF
    leaked = float(np.sum(weights[~support]))
    if leaked > SUPPORT_TOL:
        raise SupportViolation(
            f"support(a) is not contained in support(b): weight {leaked:.3e} in ker(b)"
        )
    cross = float(np.dot(weights[support], np.log(b_eig.eigenvalues[support])))
    return -entropy(a_m) - cross


def gibbs_state(h, beta: float) -> ComplexMatrix:
    """e^{-beta H} / Z, evaluated with the ground energy factored out."""
    _check_beta(beta)
    h_m = as_operator(h)
    ground = eigvals_hermitian(h_m)[0]
    unnormalized = func_hermitian(h_m, lambda e: np.exp(-beta * (e - ground)))
    return unnormalized / np.trace(unnormalized).real


def free_energy(h, beta: float) -> float:
    """F = -log(Z) / beta."""
    _check_beta(beta)
    energies = eigvals_hermitian(as_operator(h))
    ground = energies[0]
    log_z = -beta * ground + np.log(np.sum(np.exp(-beta * (energies - ground))))
    return float(-log_z / beta)


def gibbs_identity_sides(rho, h, beta: float) -> tuple[float, float]:
    """
    Both sides of D(rho || rho_beta) = beta Tr[H (rho - rho_beta)] - S(rho) + S(rho_beta),
    each computed independently.
    """
    h_m = as_operator(h)
    rho_m = as_operator(rho)
    thermal = gibbs_state(h_m, beta)
    lhs = relative_entropy(rho_m, thermal)
    rhs = beta * (expectation(rho_m, h_m) - expectation(thermal, h_m)) - entropy(rho_m) + entropy(thermal)
    return lhs, rhs


def emin_bounds(
    state: BipartiteState,
    h: HamiltonianSpec,
    basis: Optional[MeasurementBasis] = None,
    beta: float = 1.0,
) -> EminBounds:
    """
    The two relative-entropy expressions that bracket beta * N_xi, together with
    beta * N_xi itself:

        lower = D(Pi(rho)^p || rho_b) - D(Pi(rho) || rho_b) - D(rho^p || rho_b)
        upper = D(rho || rho_b) + D(Pi(rho) || rho_b) - D(rho^p || rho_b)

    Which orientation holds is reported by the EminBounds flags, not asserted.
    """
    _check_beta(beta)
    basis = resolve_basis(state, basis)
    measured = measure_local(state, basis)
    thermal = gibbs_state(h, beta)
    passive_before = passive(state, h).passive_state
    passive_after = passive(measured, h).passive_state

    d_state = relative_entropy(state.rho, thermal)
    d_measured = relative_entropy(measured.rho, thermal)
    d_passive_before = relative_entropy(passive_before, thermal)
    d_passive_after = relative_entropy(passive_after, thermal)

    emin = ergotropy(state, h) - ergotropy(measured, h)
    return EminBounds(
        lower=d_passive_after - d_measured - d_passive_before,
        upper=d_state + d_measured - d_passive_before,
        emin=emin,
        beta=beta,
    )
