# src/emin_lab/experiments/oneshot.py
"""
Single-instance evaluations behind the `ergotropy` and `emin` commands: bare
matrices in, every applicable quantity out.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from emin_lab.config import DEFAULT_BETA, DEGENERACY_TOL, NORMALIZATION_TOL
from emin_lab.core.ergotropy import (
    emin_breakdown,
    emin_direct,
    emin_mixed_closed,
    emin_noninteracting,
    emin_pure_closed,
    ergotropic_gap,
    passive,
)
from emin_lab.core.errors import DimensionMismatch, InvalidState
from emin_lab.core.hamiltonians import split_local
from emin_lab.core.linalg import eig_hermitian
from emin_lab.core.models import (
    BipartiteState,
    EminBounds,
    EminBreakdown,
    ErgotropyReport,
    MeasurementBasis,
    Structure,
    as_complex_matrix,
)
from emin_lab.core.states import basis_from_vectors, marginal_basis
from emin_lab.core.thermo import emin_bounds
from emin_lab.utils.log import get_logger

log = get_logger(__name__)

PURITY_TOL = 1e-10


@dataclass
class ErgotropyEvaluation:
    report: ErgotropyReport
    structure: Optional[Structure] = None
    ergotropic_gap: Optional[float] = None


@dataclass
class EminEvaluation:
    dim_a: int
    dim_b: int
    structure: Structure
    basis_source: str
    degenerate_marginal: bool
    routes: dict[str, float] = field(default_factory=dict)
    breakdown: Optional[EminBreakdown] = None
    bounds: Optional[EminBounds] = None

    @property
    def route_spread(self) -> float:
        values = list(self.routes.values())
        return max(values) - min(values) if values else 0.0


def _check_dims(matrix: np.ndarray, dims: tuple[int, int], label: str) -> None:
    n, m = dims
    if n < 1 or m < 1:
        raise DimensionMismatch(f"Subsystem dimensions must be positive, got {n} x {m}")
    if matrix.shape != (n * m, n * m):
        raise DimensionMismatch(f"{label} has shape {matrix.shape}, dims {n} x {m} need {(n * m, n * m)}")


def basis_from_unitary(u, dim_a: int) -> MeasurementBasis:
    """Measurement basis from the columns of a unitary matrix."""
    u = as_complex_matrix(u)
    if u.shape != (dim_a, dim_a):
        raise DimensionMismatch(f"Basis matrix has shape {u.shape}, subsystem A needs {(dim_a, dim_a)}")
    defect = float(np.max(np.abs(u.conj().T @ u - np.eye(dim_a))))
    if defect > NORMALIZATION_TOL:
        raise InvalidState(f"Basis columns are not orthonormal (defect {defect:.3e})")
    return basis_from_vectors(u)


def is_pure(state: BipartiteState) -> bool:
    return state.spectrum[-1] > 1.0 - PURITY_TOL


def evaluate_ergotropy(rho, h, dims: Optional[tuple[int, int]] = None) -> ErgotropyEvaluation:
    """Ergotropy report; with dims and a non-interacting H also the ergotropic gap."""
    rho = as_complex_matrix(rho)
    h = as_complex_matrix(h)
    if dims is None:
        return ErgotropyEvaluation(report=passive(BipartiteState(rho.shape[0], 1, rho), h))
    _check_dims(rho, dims, "State")
    _check_dims(h, dims, "Hamiltonian")
    state = BipartiteState(dims[0], dims[1], rho)
    spec = split_local(h, *dims)
    gap = ergotropic_gap(state, spec) if spec.is_non_interacting else None
    return ErgotropyEvaluation(report=passive(state, spec), structure=spec.structure, ergotropic_gap=gap)


def evaluate_emin(
    rho,
    h,
    dims: tuple[int, int],
    basis_matrix=None,
    beta: float = DEFAULT_BETA,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> EminEvaluation:
    """Every EMIN route that applies to the input, plus breakdown and bounds."""
    rho = as_complex_matrix(rho)
    h = as_complex_matrix(h)
    _check_dims(rho, dims, "State")
    _check_dims(h, dims, "Hamiltonian")
    dim_a, dim_b = dims
    state = BipartiteState(dim_a, dim_b, rho)
    spec = split_local(h, dim_a, dim_b)

    if basis_matrix is not None:
        basis = basis_from_unitary(basis_matrix, dim_a)
        source = "user"
    else:
        basis = marginal_basis(state, degeneracy_tol)
        source = "marginal eigenbasis"
        if basis.degenerate_marginal:
            log.warning("Marginal of A is degenerate; pass --basis to fix the measurement")

    evaluation = EminEvaluation(
        dim_a=dim_a,
        dim_b=dim_b,
        structure=spec.structure,
        basis_source=source,
        degenerate_marginal=basis.degenerate_marginal,
    )
    evaluation.routes["direct"] = emin_direct(state, spec, basis)
    evaluation.routes["mixed_closed"] = emin_mixed_closed(state, spec, basis)
    if spec.is_non_interacting:
        evaluation.routes["noninteracting"] = emin_noninteracting(state, spec, basis)
    if basis_matrix is None and not basis.degenerate_marginal and is_pure(state):
        psi = eig_hermitian(state.rho).eigenvectors[:, -1]
        evaluation.routes["pure_closed"] = emin_pure_closed(psi, spec)
    evaluation.breakdown = emin_breakdown(state, spec, basis)
    evaluation.bounds = emin_bounds(state, spec, basis, beta=beta)
    return evaluation
