# src/emin_lab/core/models.py
"""
Core domain models for emin-lab.

Matrices are plain numpy complex arrays; the dataclasses below pin down what a
matrix *means* (a state, a Hamiltonian, a decomposition) and validate the invariants
that every downstream computation relies on.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
import numpy.typing as npt

from emin_lab.config import HERMITIAN_TOL, PSD_CLAMP_TOL, TRACE_TOL
from emin_lab.core.errors import DimensionMismatch, InvalidParameter, InvalidState, NotHermitian

ComplexMatrix = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]


def as_complex_matrix(m) -> ComplexMatrix:
    """Coerce to a finite 2-D complex128 array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"Expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Matrix contains NaN or Inf entries")
    return arr


def hermiticity_defect(m: ComplexMatrix) -> float:
    """Max-abs entry of M - M^dagger."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


class Subsystem(str, Enum):
    A = "A"
    B = "B"


class Structure(str, Enum):
    NON_INTERACTING = "NonInteracting"
    INTERACTING = "Interacting"


class Ensemble(str, Enum):
    PURE = "pure"
    MIXED = "mixed"


class EminRole(str, Enum):
    """How the correlations of a state act on extractable work."""
    ENHANCING = "enhancing"
    LOCKED = "locked"
    HINDERING = "hindering"
    ABSENT = "absent"


@dataclass(frozen=True)
class HermitianEig:
    """Eigenvalues ascending; eigenvectors as matching columns."""
    eigenvalues: RealVector
    eigenvectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class BipartiteState:
    """
    A density matrix on C^n (x) C^m.

    Validated on construction: Hermitian, unit trace, eigenvalues >= -PSD_CLAMP_TOL.
    The stored matrix is the symmetrized (rho + rho^dagger)/2. Eigenvalues in
    [-PSD_CLAMP_TOL, 0) read as 0 through `spectrum`.
    """
    dim_a: int
    dim_b: int
    rho: ComplexMatrix

    def __post_init__(self):
        rho = as_complex_matrix(self.rho)
        d = self.dim_a * self.dim_b
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionMismatch(f"Subsystem dims must be positive, got ({self.dim_a}, {self.dim_b})")
        if rho.shape != (d, d):
            raise DimensionMismatch(
                f"rho has shape {rho.shape}, expected ({d}, {d}) for dims ({self.dim_a}, {self.dim_b})"
            )
        defect = hermiticity_defect(rho)
        if defect > HERMITIAN_TOL:
            raise NotHermitian(f"rho is not Hermitian (defect {defect:.3e})")
        rho = 0.5 * (rho + rho.conj().T)
        trace = float(np.trace(rho).real)
        if abs(trace - 1.0) > TRACE_TOL:
            raise InvalidState(f"Tr(rho) = {trace:.12g}, expected 1")
        values = np.linalg.eigvalsh(rho)
        if values[0] < -PSD_CLAMP_TOL:
            raise InvalidState(f"rho has a negative eigenvalue {values[0]:.3e}")
        spectrum = np.clip(values, 0.0, None)
        rho.setflags(write=False)
        spectrum.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "_spectrum", spectrum)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    @property
    def spectrum(self) -> RealVector:
        """Ascending eigenvalues of rho, roundoff negatives clamped to 0."""
        return self._spectrum


@dataclass(frozen=True)
class PureSchmidt:
    """
    psi = sum_i sqrt(coefficients[i]) |basis_a[:, i]> (x) |basis_b[:, i]>.

    coefficients are the squared Schmidt coefficients, descending, length min(n, m).
    basis_a (n x n) and basis_b (m x m) are full orthonormal bases; columns beyond
    min(n, m) complete the Schmidt vectors.
    """
    coefficients: RealVector
    basis_a: ComplexMatrix
    basis_b: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        r = len(self.coefficients)
        amplitudes = np.sqrt(self.coefficients)
        psi = np.zeros(self.basis_a.shape[0] * self.basis_b.shape[0], dtype=np.complex128)
        for i in range(r):
            psi += amplitudes[i] * np.kron(self.basis_a[:, i], self.basis_b[:, i])
        return psi


@dataclass(frozen=True)
class OperatorSchmidt:
    """H = sum_l strengths[l] * factors_a[l] (x) factors_b[l], HS-orthonormal factors."""
    strengths: RealVector
    factors_a: list[ComplexMatrix]
    factors_b: list[ComplexMatrix]

    @property
    def rank(self) -> int:
        return len(self.strengths)

    def reconstruct(self) -> ComplexMatrix:
        n = self.factors_a[0].shape[0] if self.factors_a else 0
        m = self.factors_b[0].shape[0] if self.factors_b else 0
        total = np.zeros((n * m, n * m), dtype=np.complex128)
        for s, a, b in zip(self.strengths, self.factors_a, self.factors_b):
            total += s * np.kron(a, b)
        return total


@dataclass(frozen=True)
class HsExpansion:
    """
    Coordinates of a bipartite state in a Hermitian orthonormal operator basis.

    basis_a[0] = I/sqrt(n) and basis_b[0] = I/sqrt(m); x, y, t index the remaining
    n^2 - 1 and m^2 - 1 elements.
    """
    dim_a: int
    dim_b: int
    x: RealVector
    y: RealVector
    t: npt.NDArray[np.float64]
    basis_a: list[ComplexMatrix]
    basis_b: list[ComplexMatrix]


@dataclass(frozen=True)
class MeasurementBasis:
    """Rank-1 orthogonal projectors on subsystem A, ordered by descending population."""
    projectors: list[ComplexMatrix]
    degenerate_marginal: bool = False

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0] if self.projectors else 0


@dataclass(frozen=True)
class HamiltonianSpec:
    """
    A global Hamiltonian with its declared structure.

    For NON_INTERACTING, local_a and local_b hold A and B with
    total == A (x) I_b + I_a (x) B.
    """
    total: ComplexMatrix
    dim_a: int
    dim_b: int
    structure: Structure = Structure.INTERACTING
    local_a: Optional[ComplexMatrix] = None
    local_b: Optional[ComplexMatrix] = None

    def __post_init__(self):
        total = as_complex_matrix(self.total)
        d = self.dim_a * self.dim_b
        if total.shape != (d, d):
            raise DimensionMismatch(
                f"H has shape {total.shape}, expected ({d}, {d}) for dims ({self.dim_a}, {self.dim_b})"
            )
        defect = hermiticity_defect(total)
        if defect > HERMITIAN_TOL:
            raise NotHermitian(f"Hamiltonian is not Hermitian (defect {defect:.3e})")
        total = 0.5 * (total + total.conj().T)
        total.setflags(write=False)
        object.__setattr__(self, "total", total)

        if self.structure == Structure.NON_INTERACTING:
            if self.local_a is None or self.local_b is None:
                raise ValueError("NonInteracting Hamiltonian needs both local operators")
            a = as_complex_matrix(self.local_a)
            b = as_complex_matrix(self.local_b)
            if a.shape != (self.dim_a, self.dim_a) or b.shape != (self.dim_b, self.dim_b):
                raise DimensionMismatch("Local operator shapes do not match subsystem dims")
            assembled = np.kron(a, np.eye(self.dim_b)) + np.kron(np.eye(self.dim_a), b)
            residual = float(np.max(np.abs(assembled - total)))
            if residual > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(total)))):
                raise ValueError(
                    f"total != A (x) I + I (x) B (residual {residual:.3e})"
                )
            object.__setattr__(self, "local_a", a)
            object.__setattr__(self, "local_b", b)

    @classmethod
    def non_interacting(cls, local_a, local_b) -> "HamiltonianSpec":
        a = as_complex_matrix(local_a)
        b = as_complex_matrix(local_b)
        n, m = a.shape[0], b.shape[0]
        total = np.kron(a, np.eye(m)) + np.kron(np.eye(n), b)
        return cls(total, n, m, Structure.NON_INTERACTING, a, b)

    @classmethod
    def interacting(cls, total, dim_a: int, dim_b: int) -> "HamiltonianSpec":
        return cls(total, dim_a, dim_b, Structure.INTERACTING)

    @property
    def is_non_interacting(self) -> bool:
        return self.structure == Structure.NON_INTERACTING

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


@dataclass(frozen=True)
class ErgotropyReport:
    energy: float
    passive_energy: float
    ergotropy: float
    passive_state: ComplexMatrix


@dataclass(frozen=True)
class EminBreakdown:
    """
    N_xi split into the measurement's energy change and passive-energy change.

    emin = energy_change + passive_change, with passive_change >= 0 for every H.
    """
    energy_before: float
    energy_after: float
    passive_before: float
    passive_after: float
    n_geo: float
    role: EminRole

    @property
    def energy_change(self) -> float:
        return self.energy_before - self.energy_after

    @property
    def passive_change(self) -> float:
        return self.passive_after - self.passive_before

    @property
    def emin(self) -> float:
        return self.energy_change + self.passive_change


@dataclass(frozen=True)
class EminBounds:
    """Both candidate relative-entropy bounds next to beta * N_xi."""
    lower: float
    upper: float
    emin: float
    beta: float

    @property
    def scaled_emin(self) -> float:
        return self.beta * self.emin

    @property
    def lower_holds(self) -> bool:
        """lower <= beta * N_xi."""
        return self.lower <= self.scaled_emin + 1e-9

    @property
    def upper_holds(self) -> bool:
        """beta * N_xi >= upper, the orientation printed for the second bound."""
        return self.scaled_emin >= self.upper - 1e-9

    @property
    def upper_as_ceiling_holds(self) -> bool:
        """beta * N_xi <= upper, the alternative reading."""
        return self.scaled_emin <= self.upper + 1e-9


@dataclass(frozen=True)
class JcParams:
    g: float
    field_dim: int = 2

    def __post_init__(self):
        if not np.isfinite(self.g):
            raise InvalidParameter(f"Coupling g must be finite, got {self.g}")
        if self.field_dim < 2:
            raise InvalidParameter(f"field_dim must be >= 2, got {self.field_dim}")


@dataclass(frozen=True)
class RngStream:
    """(master_seed, sample_index) -> one independent, reproducible random stream."""
    master_seed: int
    sample_index: int = 0

    def __post_init__(self):
        if self.master_seed < 0 or self.sample_index < 0:
            raise InvalidParameter("master_seed and sample_index must be non-negative")


@dataclass
class ExperimentRecord:
    """One Monte Carlo sample of the EMIN vs geometric-measure scatter."""
    g: float
    sample_index: int
    n_geo: float
    n_xi: float
    e_before: float
    e_after: float
    ep_before: float
    ep_after: float

    @property
    def consistency_defect(self) -> float:
        return abs(self.n_xi - ((self.e_before - self.ep_before) - (self.e_after - self.ep_after)))

    def as_row(self) -> list:
        return [
            self.g, self.sample_index, self.n_geo, self.n_xi,
            self.e_before, self.e_after, self.ep_before, self.ep_after,
        ]


@dataclass
class ProbabilityRow:
    """One g grid point of the negative-EMIN probability sweep."""
    g: float
    n_samples: int
    n_negative: int

    @property
    def probability(self) -> float:
        return self.n_negative / self.n_samples if self.n_samples else 0.0


@dataclass
class RunManifest:
    command_line: list[str]
    master_seed: int
    parameters: dict
    artifact_version: str
    files: dict[str, str] = field(default_factory=dict)
    wall_clock_seconds: Optional[float] = None
    started_at: str = ""


@dataclass
class InvariantResult:
    """Outcome of one invariant over a batch of random instances."""
    name: str
    trials: int
    failures: int = 0
    max_deviation: float = 0.0
    tolerance: float = 0.0
    details: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class SuiteReport:
    suite_id: str
    seed: int
    results: list[InvariantResult] = field(default_factory=list)
    duration_seconds: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def total_failures(self) -> int:
        return sum(r.failures for r in self.results)


def as_operator(x) -> ComplexMatrix:
    """The matrix behind a state, a Hamiltonian spec, or a raw array."""
    if isinstance(x, BipartiteState):
        return x.rho
    if isinstance(x, HamiltonianSpec):
        return x.total
    return as_complex_matrix(x)
