"""Exact small-scale complex linear algebra on composite Hilbert spaces.

States and density matrices carry their subsystem dimensions explicitly and
use row-major ordering with the leftmost subsystem most significant, so
amplitude index = sum_i idx_i * prod(dims[i+1:]). Every operation here is a
pure function on immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import CLAMP_TOL, STRUCT_TOL


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StateVector:
    """Pure state over a composite space with declared subsystem dimensions."""

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must all be >= 2, got {dims}")
        amps = _frozen_array(self.amps, np.complex128)
        if amps.ndim != 1 or amps.size != math.prod(dims):
            raise ValueError(
                f"amplitude vector has length {amps.size}, expected {math.prod(dims)}"
            )
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > STRUCT_TOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def projector(self) -> "DensityMatrix":
        """Return |psi><psi| over the same subsystem dimensions."""
        return DensityMatrix(self.dims, np.outer(self.amps, self.amps.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian unit-trace operator over a declared composite space."""

    dims: tuple[int, ...]
    mat: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must all be >= 2, got {dims}")
        mat = _frozen_array(self.mat, np.complex128)
        side = math.prod(dims)
        if mat.shape != (side, side):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {dims}")
        if np.max(np.abs(mat - mat.conj().T)) > STRUCT_TOL:
            raise ValueError("matrix is not Hermitian")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > STRUCT_TOL:
            raise ValueError(f"trace is {tr!r}, expected 1")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mat", mat)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)


@dataclass(frozen=True)
class ProbDist:
    """Normalized nonnegative weights with opaque labels.

    Rounding noise in [-CLAMP_TOL, 0) is clamped to zero so that 0*log(0)
    never arises downstream.
    """

    weights: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64)
        if w.ndim != 1:
            raise ValueError("weights must be a flat vector")
        if np.min(w) < -CLAMP_TOL:
            raise ValueError(f"negative weight {np.min(w)!r} exceeds rounding tolerance")
        w = np.clip(w, 0.0, None)
        total = float(w.sum())
        if abs(total - 1.0) > STRUCT_TOL:
            raise ValueError(f"weights sum to {total!r}, expected 1")
        labels = tuple(self.labels) if self.labels else tuple(range(w.size))
        if len(labels) != w.size:
            raise ValueError("labels and weights differ in length")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "labels", labels)


def tensor_product(a, b):
    """Kronecker product of two states or two density matrices.

    The result lives on the concatenated subsystem list, row-major with the
    first operand most significant. Mixing kinds is a type error.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(a.dims + b.dims, np.kron(a.amps, b.amps))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(a.dims + b.dims, np.kron(a.mat, b.mat))
    raise TypeError(
        f"operands must be of the same kind, got {type(a).__name__} and {type(b).__name__}"
    )


def _validate_keep(keep, n_subsystems: int) -> tuple[int, ...]:
    if isinstance(keep, int):
        keep = (keep,)
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep:
        raise ValueError("keep-set must not be empty")
    if any(k < 0 or k >= n_subsystems for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n_subsystems} subsystems")
    if len(keep) == n_subsystems:
        raise ValueError("keep-set must be a proper subset of the subsystems")
    return keep


def partial_trace(state, keep) -> DensityMatrix:
    """Reduced density matrix over the kept subsystems, in original order.

    Accepts a StateVector (traced as |psi><psi|) or a DensityMatrix.
    """
    if isinstance(state, StateVector):
        dims = state.dims
        keep = _validate_keep(keep, len(dims))
        drop = tuple(i for i in range(len(dims)) if i not in keep)
        kept_dims = tuple(dims[i] for i in keep)
        psi = state.amps.reshape(dims).transpose(keep + drop)
        m = psi.reshape(math.prod(kept_dims), -1)
        return DensityMatrix(kept_dims, m @ m.conj().T)
    if isinstance(state, DensityMatrix):
        dims = state.dims
        keep = _validate_keep(keep, len(dims))
        n = len(dims)
        rho = state.mat.reshape(dims + dims)
        remaining = list(dims)
        for idx in sorted((i for i in range(n) if i not in keep), reverse=True):
            rho = np.trace(rho, axis1=idx, axis2=idx + len(remaining))
            del remaining[idx]
        side = math.prod(remaining)
        return DensityMatrix(tuple(remaining), rho.reshape(side, side))
    raise TypeError(f"expected StateVector or DensityMatrix, got {type(state).__name__}")


def fidelity(psi: StateVector, rho: DensityMatrix) -> float:
    """Overlap <psi|rho|psi> of a pure state with a density matrix."""
    if psi.total_dim != rho.total_dim:
        raise ValueError(
            f"dimension mismatch: state has {psi.total_dim}, matrix has {rho.total_dim}"
        )
    value = complex(psi.amps.conj() @ rho.mat @ psi.amps)
    # Hermiticity makes this real up to rounding
    return float(value.real)


def shannon_entropy(p: ProbDist) -> float:
    """Shannon entropy in bits, with 0*log(0) = 0."""
    w = p.weights[p.weights > 0.0]
    return float(-np.sum(w * np.log2(w)))


def random_state(dim: int, rng: np.random.Generator) -> StateVector:
    """Haar-like random pure state on a single dim-dimensional system."""
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector((dim,), amps / np.linalg.norm(amps))
