# src/emin_lab/core/hamiltonians.py
"""
Hamiltonian construction: Pauli/ladder primitives, the truncated Jaynes-Cummings
model, and detection of non-interacting structure in a bare matrix.

Conventions: sigma_z = diag(1, -1), sigma_plus = |0><1|, a|k> = sqrt(k)|k-1>.
The qubit is subsystem A, the field mode is subsystem B.
"""

import numpy as np

from emin_lab.config import HERMITIAN_TOL
from emin_lab.core.linalg import hermitize, partial_trace
from emin_lab.core.models import ComplexMatrix, HamiltonianSpec, JcParams, Subsystem

SIGMA_X: ComplexMatrix = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y: ComplexMatrix = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z: ComplexMatrix = np.array([[1, 0], [0, -1]], dtype=np.complex128)
SIGMA_PLUS: ComplexMatrix = np.array([[0, 1], [0, 0]], dtype=np.complex128)
SIGMA_MINUS: ComplexMatrix = SIGMA_PLUS.conj().T
IDENTITY_2: ComplexMatrix = np.eye(2, dtype=np.complex128)


def annihilation(dim: int) -> ComplexMatrix:
    """Truncated bosonic lowering operator on span{|0>, ..., |dim-1>}."""
    return np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(np.complex128)


def number_operator(dim: int) -> ComplexMatrix:
    return np.diag(np.arange(dim)).astype(np.complex128)


def jc_free_parts(field_dim: int) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Local parts (sigma_z / 2, a^dagger a) of the JC Hamiltonian."""
    return 0.5 * SIGMA_Z, number_operator(field_dim)


def jc_interaction(field_dim: int) -> ComplexMatrix:
    """sigma_+ (x) a + sigma_- (x) a^dagger."""
    a = annihilation(field_dim)
    return np.kron(SIGMA_PLUS, a) + np.kron(SIGMA_MINUS, a.conj().T)


def jaynes_cummings(params: JcParams) -> HamiltonianSpec:
    """
    H = sigma_z/2 (x) I + I (x) a^dagger a + g (sigma_+ a + sigma_- a^dagger)
    on C^2 (x) C^field_dim.

    At g == 0 the returned HamiltonianSpec carries the NonInteracting structure.
    """
    qubit, field = jc_free_parts(params.field_dim)
    if params.g == 0.0:
        return HamiltonianSpec.non_interacting(qubit, field)
    free = np.kron(qubit, np.eye(params.field_dim)) + np.kron(IDENTITY_2, field)
    total = free + params.g * jc_interaction(params.field_dim)
    return HamiltonianSpec.interacting(total, 2, params.field_dim)


def excitation_number(field_dim: int) -> ComplexMatrix:
    """Conserved quantity sigma_z/2 (x) I + I (x) a^dagger a of the JC model."""
    qubit, field = jc_free_parts(field_dim)
    return np.kron(qubit, np.eye(field_dim)) + np.kron(IDENTITY_2, field)


def split_local(h, dim_a: int, dim_b: int, tol: float = HERMITIAN_TOL) -> HamiltonianSpec:
    """
    Classify a bare Hermitian matrix as non-interacting or interacting.

    Candidate local parts are A = Tr_b(H)/m - c I and B = Tr_a(H)/n - c I with
    c = Tr(H)/(2nm); H is non-interacting when A (x) I + I (x) B matches it within
    tol * max(1, max|H|).
    """
    h = hermitize(h)
    n, m = dim_a, dim_b
    shift = np.trace(h).real / (2 * n * m)
    local_a = partial_trace(h, n, m, Subsystem.A) / m - shift * np.eye(n)
    local_b = partial_trace(h, n, m, Subsystem.B) / n - shift * np.eye(m)
    assembled = np.kron(local_a, np.eye(m)) + np.kron(np.eye(n), local_b)
    scale = max(1.0, float(np.max(np.abs(h))))
    if float(np.max(np.abs(assembled - h))) <= tol * scale:
        return HamiltonianSpec.non_interacting(local_a, local_b)
    return HamiltonianSpec.interacting(h, n, m)
