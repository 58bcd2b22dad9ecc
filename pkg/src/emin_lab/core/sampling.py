# src/emin_lab/core/sampling.py
"""
Seeded random states, unitaries and Hamiltonians.

Every draw is a pure function of an RngStream: the master seed and sample index
feed a numpy SeedSequence whose spawn key also carries a purpose tag, and the
resulting entropy drives a counter-based Philox generator. Equal streams give
bit-identical draws; different sample indices are statistically independent, so
samples can be evaluated in any order or in parallel.
"""

from enum import IntEnum
from typing import Optional

import numpy as np
from scipy.stats import unitary_group

from emin_lab.core.linalg import eig_hermitian, partial_trace
from emin_lab.core.models import (
    BipartiteState,
    ComplexMatrix,
    Ensemble,
    HamiltonianSpec,
    RngStream,
    Subsystem,
)


class Purpose(IntEnum):
    """Spawn-key tags so one sample index can feed several independent draws."""
    STATE = 0
    HAMILTONIAN = 1
    UNITARY = 2
    PARAMETER = 3


def make_generator(stream: RngStream, purpose: Purpose = Purpose.STATE) -> np.random.Generator:
    seq = np.random.SeedSequence(
        entropy=stream.master_seed,
        spawn_key=(stream.sample_index, int(purpose)),
    )
    return np.random.Generator(np.random.Philox(seq))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Independent standard complex normal entries (unit variance)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------

def haar_pure_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector in C^dim."""
    v = complex_gaussian(rng, dim)
    return v / np.linalg.norm(v)


def ginibre_density(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> ComplexMatrix:
    """G G^dagger / Tr for a dim x rank Ginibre matrix G (rank defaults to full)."""
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must lie in [1, {dim}], got {rank}")
    g = complex_gaussian(rng, (dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def haar_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    return np.asarray(unitary_group.rvs(dim, random_state=rng), dtype=np.complex128)


def _draw_density(
    dim_a: int,
    dim_b: int,
    ensemble: Ensemble,
    rng: np.random.Generator,
    rank: Optional[int],
) -> ComplexMatrix:
    d = dim_a * dim_b
    if Ensemble(ensemble) == Ensemble.PURE:
        v = haar_pure_vector(d, rng)
        return np.outer(v, v.conj())
    return ginibre_density(d, rng, rank)


def sample_state(
    dim_a: int,
    dim_b: int,
    ensemble: Ensemble | str,
    stream: RngStream,
    rank: Optional[int] = None,
) -> BipartiteState:
    """Haar pure or Ginibre mixed state with no constraint on the marginal."""
    rng = make_generator(stream, Purpose.STATE)
    return BipartiteState(dim_a, dim_b, _draw_density(dim_a, dim_b, Ensemble(ensemble), rng, rank))


def sample_state_diagonal_marginal(
    dim_a: int,
    dim_b: int,
    ensemble: Ensemble | str,
    stream: RngStream,
    rank: Optional[int] = None,
) -> BipartiteState:
    """
    Random state whose A-marginal is diagonal in the computational basis with
    descending populations.

    Draws from the Haar/Ginibre ensemble and rotates subsystem A by the marginal's
    eigenbasis; the rotation is local, so the marginal spectrum and all
    correlations are those of the original draw.
    """
    rng = make_generator(stream, Purpose.STATE)
    rho = _draw_density(dim_a, dim_b, Ensemble(ensemble), rng, rank)
    eig = eig_hermitian(partial_trace(rho, dim_a, dim_b, Subsystem.A))
    u_a = eig.eigenvectors[:, ::-1]
    rotation = np.kron(u_a.conj().T, np.eye(dim_b))
    rotated = rotation @ rho @ rotation.conj().T
    return BipartiteState(dim_a, dim_b, 0.5 * (rotated + rotated.conj().T))


# ---------------------------------------------------------------------------
# Hamiltonians
# ---------------------------------------------------------------------------

def gue_matrix(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """GUE-style draw: complex Gaussian entries, Hermitized."""
    x = complex_gaussian(rng, (dim, dim))
    return 0.5 * (x + x.conj().T)


def sample_hamiltonian(dim_a: int, dim_b: int, stream: RngStream) -> HamiltonianSpec:
    """Generic (interacting) Hermitian draw on C^dim_a (x) C^dim_b."""
    rng = make_generator(stream, Purpose.HAMILTONIAN)
    return HamiltonianSpec.interacting(gue_matrix(dim_a * dim_b, rng), dim_a, dim_b)


def sample_noninteracting_hamiltonian(dim_a: int, dim_b: int, stream: RngStream) -> HamiltonianSpec:
    """A (x) I + I (x) B with independent GUE-style local parts."""
    rng = make_generator(stream, Purpose.HAMILTONIAN)
    local_a = gue_matrix(dim_a, rng)
    local_b = gue_matrix(dim_b, rng)
    return HamiltonianSpec.non_interacting(local_a, local_b)
