# src/emin_lab/core/states.py
"""
Bipartite states: construction, Schmidt and operator-Schmidt decompositions,
Hilbert-Schmidt basis expansion, and the locally invariant projective measurement.

Subsystem A always carries the measurement; subsystem B is left untouched.
"""

from functools import lru_cache
from typing import Optional

import numpy as np

from emin_lab.config import DEGENERACY_TOL, NORMALIZATION_TOL, SCHMIDT_CUTOFF
from emin_lab.core.errors import DimensionMismatch, NoConvergence, NotNormalized
from emin_lab.core.linalg import eig_hermitian, hermitize, hs_norm_sq, partial_trace
from emin_lab.core.models import (
    BipartiteState,
    ComplexMatrix,
    HsExpansion,
    MeasurementBasis,
    OperatorSchmidt,
    PureSchmidt,
    Subsystem,
)
from emin_lab.utils.log import get_logger

log = get_logger(__name__)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _as_state_vector(psi, dim_a: int, dim_b: int) -> np.ndarray:
    vec = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if vec.size != dim_a * dim_b:
        raise DimensionMismatch(
            f"State vector has {vec.size} amplitudes, expected {dim_a * dim_b}"
        )
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"||psi|| = {norm:.12g}, expected 1")
    return vec


def pure_state(psi, dim_a: int, dim_b: int) -> BipartiteState:
    """|psi><psi| as a BipartiteState."""
    vec = _as_state_vector(psi, dim_a, dim_b)
    return BipartiteState(dim_a, dim_b, np.outer(vec, vec.conj()))


def product_state(rho_a, rho_b) -> BipartiteState:
    rho_a = np.asarray(rho_a, dtype=np.complex128)
    rho_b = np.asarray(rho_b, dtype=np.complex128)
    return BipartiteState(rho_a.shape[0], rho_b.shape[0], np.kron(rho_a, rho_b))


def maximally_mixed(dim_a: int, dim_b: int) -> BipartiteState:
    d = dim_a * dim_b
    return BipartiteState(dim_a, dim_b, np.eye(d, dtype=np.complex128) / d)


def maximally_entangled(d: int) -> np.ndarray:
    """(1/sqrt(d)) sum_i |ii> on C^d (x) C^d."""
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[[i * d + i for i in range(d)]] = 1.0 / np.sqrt(d)
    return psi


def marginal(state: BipartiteState, keep: Subsystem | str = Subsystem.A) -> ComplexMatrix:
    return partial_trace(state.rho, state.dim_a, state.dim_b, keep)


# ---------------------------------------------------------------------------
# Schmidt decompositions
# ---------------------------------------------------------------------------

def schmidt_pure(psi, dim_a: int, dim_b: int) -> PureSchmidt:
    """
    Schmidt decomposition of a normalized pure state via SVD of its n x m
    coefficient matrix. Returns squared coefficients, descending.
    """
    vec = _as_state_vector(psi, dim_a, dim_b)
    try:
        u, s, vh = np.linalg.svd(vec.reshape(dim_a, dim_b), full_matrices=True)
    except np.linalg.LinAlgError as e:
        raise NoConvergence(f"SVD did not converge: {e}") from e
    coefficients = s**2
    coefficients = coefficients / coefficients.sum()
    return PureSchmidt(
        coefficients=coefficients,
        basis_a=u,
        basis_b=vh.T,
    )


def operator_schmidt(h, dim_a: int, dim_b: int, cutoff: float = SCHMIDT_CUTOFF) -> OperatorSchmidt:
    """
    Operator Schmidt decomposition H = sum_l s_l A_l (x) B_l.

    Realigns H[(ia, ib), (ja, jb)] into R[(ia, ja), (ib, jb)] and takes its SVD.
    Terms with s_l <= cutoff * max(s) are dropped.
    """
    h = hermitize(h)
    d = dim_a * dim_b
    if h.shape != (d, d):
        raise DimensionMismatch(
            f"Operator of shape {h.shape} does not act on C^{dim_a} (x) C^{dim_b}"
        )
    realigned = (
        h.reshape(dim_a, dim_b, dim_a, dim_b)
        .transpose(0, 2, 1, 3)
        .reshape(dim_a * dim_a, dim_b * dim_b)
    )
    try:
        u, s, vh = np.linalg.svd(realigned, full_matrices=False)
    except np.linalg.LinAlgError as e:
        raise NoConvergence(f"SVD did not converge: {e}") from e
    if s.size == 0 or s[0] == 0.0:
        return OperatorSchmidt(strengths=np.zeros(0), factors_a=[], factors_b=[])
    keep = s > cutoff * s[0]
    factors_a = [u[:, l].reshape(dim_a, dim_a) for l in np.flatnonzero(keep)]
    factors_b = [vh[l, :].reshape(dim_b, dim_b) for l in np.flatnonzero(keep)]
    return OperatorSchmidt(strengths=s[keep], factors_a=factors_a, factors_b=factors_b)


# ---------------------------------------------------------------------------
# Hilbert-Schmidt basis expansion
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _hs_basis_cached(d: int) -> tuple[np.ndarray, ...]:
    basis = [np.eye(d, dtype=np.complex128) / np.sqrt(d)]
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    for j, k in pairs:
        m = np.zeros((d, d), dtype=np.complex128)
        m[j, k] = m[k, j] = 1.0 / np.sqrt(2)
        basis.append(m)
    for j, k in pairs:
        m = np.zeros((d, d), dtype=np.complex128)
        m[j, k] = -1j / np.sqrt(2)
        m[k, j] = 1j / np.sqrt(2)
        basis.append(m)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -float(l)
        basis.append(np.diag(diag / np.sqrt(l * (l + 1))).astype(np.complex128))
    for m in basis:
        m.setflags(write=False)
    return tuple(basis)


def hs_basis(d: int) -> list[ComplexMatrix]:
    """
    Hermitian orthonormal operator basis of C^{d x d}.

    Order: I/sqrt(d); symmetric Gell-Mann (E_jk + E_kj)/sqrt(2) for j < k;
    antisymmetric (-i E_jk + i E_kj)/sqrt(2) for j < k; diagonal
    (sum_{j<l} E_jj - l E_ll)/sqrt(l(l+1)) for l = 1..d-1.
    For d = 2 this is (I, sigma_x, sigma_y, sigma_z)/sqrt(2).
    """
    if d < 1:
        raise DimensionMismatch(f"Basis dimension must be positive, got {d}")
    return list(_hs_basis_cached(d))


def _coordinates(rho: ComplexMatrix, basis_a, basis_b, dim_a: int, dim_b: int) -> np.ndarray:
    """c[i, j] = Tr(rho (X_i (x) Y_j)) for Hermitian bases."""
    tensor = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    xs = np.stack(basis_a)
    ys = np.stack(basis_b)
    # Tr(rho X(x)Y) = sum rho[a,b,a',b'] X[a',a] Y[b',b]
    return np.einsum("abcd,ica,jdb->ij", tensor, xs, ys)


def hs_expand(state: BipartiteState) -> HsExpansion:
    """Coordinates (x, y, t) of the state in the Gell-Mann product basis."""
    n, m = state.dim_a, state.dim_b
    basis_a = hs_basis(n)
    basis_b = hs_basis(m)
    coords = _coordinates(state.rho, basis_a, basis_b, n, m)
    residue = float(np.max(np.abs(coords.imag))) if coords.size else 0.0
    if residue > 1e-10:
        log.warning("HS coordinates carry imaginary residue %.3e", residue)
    coords = coords.real
    return HsExpansion(
        dim_a=n,
        dim_b=m,
        x=coords[1:, 0].copy(),
        y=coords[0, 1:].copy(),
        t=coords[1:, 1:].copy(),
        basis_a=basis_a,
        basis_b=basis_b,
    )


def hs_reconstruct(expansion: HsExpansion) -> ComplexMatrix:
    """Re-sum the expansion into a density matrix."""
    n, m = expansion.dim_a, expansion.dim_b
    xa, yb = expansion.basis_a, expansion.basis_b
    rho = np.kron(xa[0], yb[0]) / np.sqrt(n * m)
    for i, xi in enumerate(expansion.x, start=1):
        rho = rho + xi * np.kron(xa[i], yb[0])
    for j, yj in enumerate(expansion.y, start=1):
        rho = rho + yj * np.kron(xa[0], yb[j])
    for i in range(1, n * n):
        for j in range(1, m * m):
            tij = expansion.t[i - 1, j - 1]
            if tij != 0.0:
                rho = rho + tij * np.kron(xa[i], yb[j])
    return rho


# ---------------------------------------------------------------------------
# Locally invariant measurement
# ---------------------------------------------------------------------------

def basis_from_vectors(vectors: np.ndarray, degenerate_marginal: bool = False) -> MeasurementBasis:
    """Projectors |v_k><v_k| for the columns of `vectors`."""
    vectors = np.asarray(vectors, dtype=np.complex128)
    projectors = [np.outer(vectors[:, k], vectors[:, k].conj()) for k in range(vectors.shape[1])]
    return MeasurementBasis(projectors=projectors, degenerate_marginal=degenerate_marginal)


def computational_basis(dim_a: int) -> MeasurementBasis:
    return basis_from_vectors(np.eye(dim_a, dtype=np.complex128))


def schmidt_basis(psi, dim_a: int, dim_b: int) -> MeasurementBasis:
    """Measurement in the A-side Schmidt vectors, completed to a full basis."""
    decomposition = schmidt_pure(psi, dim_a, dim_b)
    return basis_from_vectors(decomposition.basis_a)


def marginal_basis(state: BipartiteState, degeneracy_tol: float = DEGENERACY_TOL) -> MeasurementBasis:
    """
    Projectors onto the eigenvectors of rho_a, by descending population.

    A degenerate marginal is flagged, not rejected: the projector set is then one
    of many locally invariant measurements and callers may pass their own basis.
    """
    eig = eig_hermitian(marginal(state, Subsystem.A))
    # eigh is ascending; a stable reversal keeps first-occurrence order on ties
    order = np.argsort(-eig.eigenvalues, kind="stable")
    populations = eig.eigenvalues[order]
    gaps = np.abs(np.diff(populations))
    degenerate = bool(np.any(gaps < degeneracy_tol)) if gaps.size else False
    if degenerate:
        log.debug("Degenerate marginal spectrum %s (tol %.1e)", populations, degeneracy_tol)
    return basis_from_vectors(eig.eigenvectors[:, order], degenerate_marginal=degenerate)


def measure_local(state: BipartiteState, basis: MeasurementBasis) -> BipartiteState:
    """Pi^a(rho) = sum_k (P_k (x) I_b) rho (P_k (x) I_b)."""
    if basis.dim != state.dim_a:
        raise DimensionMismatch(
            f"Measurement acts on dimension {basis.dim}, subsystem A has {state.dim_a}"
        )
    n, m = state.dim_a, state.dim_b
    tensor = state.rho.reshape(n, m, n, m)
    out = np.zeros_like(tensor)
    for p in basis.projectors:
        out += np.einsum("ia,abcd,cj->ibjd", p, tensor, p)
    return BipartiteState(n, m, out.reshape(n * m, n * m))


def geometric_min(state: BipartiteState, basis: MeasurementBasis) -> float:
    """Hilbert-Schmidt distance ||rho - Pi^a(rho)||^2."""
    measured = measure_local(state, basis)
    return hs_norm_sq(state.rho - measured.rho)


def resolve_basis(state: BipartiteState, basis: Optional[MeasurementBasis] = None) -> MeasurementBasis:
    """The caller's basis if given, otherwise the marginal eigenbasis."""
    if basis is not None:
        return basis
    resolved = marginal_basis(state, DEGENERACY_TOL)
    if resolved.degenerate_marginal:
        log.warning(
            "Marginal of subsystem A is degenerate; the eigenbasis measurement is not "
            "unique. Pass an explicit MeasurementBasis to pin it."
        )
    return resolved
