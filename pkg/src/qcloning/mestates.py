"""Maximally entangled basis states and the shift/phase error operators.

For two N-dimensional systems the N^2 states

    |psi_mn> = N^{-1/2} sum_j exp(2*pi*i*j*n/N) |j>|j+m>      (kets mod N)

form an orthonormal basis of the product space. They are generated from
|psi_00> by the local action of the error operators

    U_mn = sum_k exp(2*pi*i*k*n/N) |k+m><k|

where m labels cyclic shifts and n labels phase rotations. At N=2 these
reduce to the Bell basis and the Pauli matrices: |psi_00> = |Phi+>,
|psi_01> = |Phi->, |psi_10> = |Psi+>, |psi_11> = |Psi->, with U_10 = sigma_x,
U_01 = sigma_z and U_11 = sigma_x sigma_z. The defining sums are used
verbatim; no re-phasing is applied anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import DensityMatrix, ProbDist, StateVector


@dataclass(frozen=True)
class MEIndex:
    """Label (m, n) of a maximally entangled state or error operator."""

    m: int
    n: int
    dim: int

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"dimension must be >= 2, got {self.dim}")
        if not (0 <= self.m < self.dim and 0 <= self.n < self.dim):
            raise ValueError(f"indices ({self.m}, {self.n}) out of range for dim {self.dim}")


@dataclass(frozen=True)
class MEDecomposition:
    """Diagonal weights of a two-party operator in the maximally entangled basis.

    residual is the Frobenius norm of the off-diagonal remainder; it vanishes
    exactly when the operator is a mixture of the basis states.
    """

    dim: int
    weights: ProbDist
    residual: float

    def grid(self) -> np.ndarray:
        """Weights as an (N, N) array indexed by (m, n)."""
        return np.asarray(self.weights.weights).reshape(self.dim, self.dim)


@lru_cache(maxsize=None)
def _me_amps(m: int, n: int, dim: int) -> np.ndarray:
    j = np.arange(dim)
    amps = np.zeros(dim * dim, dtype=np.complex128)
    amps[j * dim + (j + m) % dim] = np.exp(2j * np.pi * j * n / dim) / np.sqrt(dim)
    amps.setflags(write=False)
    return amps


@lru_cache(maxsize=None)
def _me_basis(dim: int) -> np.ndarray:
    """All N^2 basis states, stacked row-major by (m, n)."""
    rows = [_me_amps(m, n, dim) for m in range(dim) for n in range(dim)]
    basis = np.array(rows)
    basis.setflags(write=False)
    return basis


@lru_cache(maxsize=None)
def _error_op(m: int, n: int, dim: int) -> np.ndarray:
    k = np.arange(dim)
    u = np.zeros((dim, dim), dtype=np.complex128)
    u[(k + m) % dim, k] = np.exp(2j * np.pi * k * n / dim)
    u.setflags(write=False)
    return u


def me_state(idx: MEIndex) -> StateVector:
    """The maximally entangled state |psi_mn> over dims (N, N)."""
    return StateVector((idx.dim, idx.dim), _me_amps(idx.m, idx.n, idx.dim))


def error_operator(idx: MEIndex) -> np.ndarray:
    """The unitary U_mn combining a shift by m and a phase gradient n."""
    return _error_op(idx.m, idx.n, idx.dim)


def local_action(idx: MEIndex) -> StateVector:
    """(I ⊗ U_mn)|psi_00>, which equals |psi_mn>."""
    n = idx.dim
    u = _error_op(idx.m, idx.n, n)
    amps = (np.kron(np.eye(n), u) @ _me_amps(0, 0, n)).ravel()
    return StateVector((n, n), amps)


def me_decompose(rho: DensityMatrix) -> MEDecomposition:
    """Project a two-party density matrix onto the maximally entangled basis.

    weights[m, n] = <psi_mn|rho|psi_mn>; the residual measures whatever part
    of rho is not a mixture of the basis states.
    """
    if len(rho.dims) != 2 or rho.dims[0] != rho.dims[1]:
        raise ValueError(f"expected two equal subsystem dimensions, got {rho.dims}")
    n = rho.dims[0]
    basis = _me_basis(n)
    weights = np.einsum("ki,ij,kj->k", basis.conj(), rho.mat, basis).real
    reconstruction = (basis.T * weights) @ basis.conj()
    residual = float(np.linalg.norm(rho.mat - reconstruction))
    labels = tuple((m, nn) for m in range(n) for nn in range(n))
    return MEDecomposition(n, ProbDist(weights, labels), residual)


def verify_resolution_identity(dim: int) -> float:
    """Frobenius norm of sum_mn |psi_mn><psi_mn| minus the identity."""
    if not (2 <= dim <= 8):
        raise ValueError(f"dimension {dim} outside the supported range [2, 8]")
    basis = _me_basis(dim)
    total = basis.T @ basis.conj()
    return float(np.linalg.norm(total - np.eye(dim * dim)))
