# src/emin_lab/core/linalg.py
"""
Dense complex linear algebra kernel.

All functions are pure: inputs are never modified, outputs are fresh arrays.
Hermitian inputs within HERMITIAN_TOL are symmetrized as (M + M^dagger)/2 before
any decomposition so roundoff from Kronecker products and partial traces cannot
leak into eigenvalue sorting.
"""

from typing import Callable

import numpy as np
import scipy.linalg as la

from emin_lab.config import HERMITIAN_TOL
from emin_lab.core.errors import DimensionMismatch, DomainError, NoConvergence, NotHermitian
from emin_lab.core.models import (
    ComplexMatrix,
    HermitianEig,
    Subsystem,
    as_complex_matrix,
    hermiticity_defect,
)


def kron(a, b) -> ComplexMatrix:
    """Kronecker product a (x) b."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def hermitize(m, tol: float = HERMITIAN_TOL) -> ComplexMatrix:
    """
    Validate Hermiticity within `tol` (max-abs) and return (M + M^dagger)/2.

    Raises:
        DimensionMismatch: if m is not square.
        NotHermitian: if the defect exceeds tol.
    """
    m = as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitian(f"Matrix is not Hermitian (max |M - M^dagger| = {defect:.3e})")
    return 0.5 * (m + m.conj().T)


def eig_hermitian(m) -> HermitianEig:
    """
    Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Within a degenerate eigenspace the choice of eigenvectors is whatever LAPACK
    returns; only rotation-invariant quantities are meaningful.
    """
    h = hermitize(m)
    try:
        values, vectors = la.eigh(h, driver="evd")
    except la.LinAlgError as e:
        raise NoConvergence(f"Hermitian eigensolver did not converge: {e}") from e
    return HermitianEig(eigenvalues=np.asarray(values, dtype=np.float64), eigenvectors=vectors)


def eigvals_hermitian(m) -> np.ndarray:
    """Ascending eigenvalues only."""
    h = hermitize(m)
    try:
        return np.asarray(la.eigvalsh(h), dtype=np.float64)
    except la.LinAlgError as e:
        raise NoConvergence(f"Hermitian eigensolver did not converge: {e}") from e


def partial_trace(rho, dim_a: int, dim_b: int, keep: Subsystem | str = Subsystem.A) -> ComplexMatrix:
    """
    Reduced operator on the kept subsystem.

    keep=A returns Tr_b(rho) (n x n); keep=B returns Tr_a(rho) (m x m).
    """
    rho = as_complex_matrix(rho)
    d = dim_a * dim_b
    if rho.shape != (d, d):
        raise DimensionMismatch(
            f"Operator of shape {rho.shape} does not act on C^{dim_a} (x) C^{dim_b}"
        )
    keep = Subsystem(keep)
    tensor = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == Subsystem.A:
        return np.einsum("ibjb->ij", tensor)
    return np.einsum("aiaj->ij", tensor)


def func_hermitian(m, f: Callable[[np.ndarray], np.ndarray]) -> ComplexMatrix:
    """
    Spectral function calculus: V diag(f(lambda)) V^dagger.

    `f` is applied to the whole eigenvalue vector and must return finite reals.

    Raises:
        NotHermitian: m fails the symmetry check.
        DomainError: f produced NaN/Inf or raised on the spectrum.
    """
    eig = eig_hermitian(m)
    try:
        with np.errstate(divide="raise", invalid="raise", over="raise"):
            mapped = np.asarray(f(eig.eigenvalues), dtype=np.float64)
    except (FloatingPointError, ValueError) as e:
        raise DomainError(f"Function is undefined on the spectrum {eig.eigenvalues}: {e}") from e
    if mapped.shape != eig.eigenvalues.shape or not np.all(np.isfinite(mapped)):
        raise DomainError(f"Function is undefined on the spectrum {eig.eigenvalues}")
    v = eig.eigenvectors
    return (v * mapped) @ v.conj().T


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product <a|b> = Tr(a b^dagger)."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"Shapes differ: {a.shape} vs {b.shape}")
    return complex(np.vdot(b, a))


def hs_norm_sq(a) -> float:
    """||a||^2 = Tr(a a^dagger), real and non-negative."""
    a = as_complex_matrix(a)
    return float(np.vdot(a, a).real)


def trace_product(a, b) -> complex:
    """Tr(a b) without forming the product."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape[1] != b.shape[0] or a.shape[0] != b.shape[1]:
        raise DimensionMismatch(f"Tr(ab) undefined for shapes {a.shape} and {b.shape}")
    return complex(np.sum(a * b.T))


def expectation(rho, h) -> float:
    """Tr(rho H) for Hermitian operands, real part."""
    return float(trace_product(rho, h).real)
