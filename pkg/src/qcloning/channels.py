"""Pauli and Heisenberg channels as probability grids over error operators.

A channel on an N-dimensional system applies the error operator U_mn with
probability p[m, n]; the grid is the canonical channel representation here.
Sending one half of |psi_00> through the channel produces the mixture
sum p[m,n] |psi_mn><psi_mn|, and that correspondence is what ties channels
to cloning machines throughout the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import CLAMP_TOL, ORACLE_TOL, STRUCT_TOL
from .linalg import DensityMatrix, StateVector, fidelity
from .mestates import MEIndex, _me_basis, error_operator, me_decompose

NAMED_KINDS = ("depolarizing", "two_pauli", "dephasing", "identity", "fully_depolarizing")

# qubit grid slots: p[0,0]=1-p, p[0,1]=p_z, p[1,0]=p_x, p[1,1]=p_y
_X_IDX, _Y_IDX, _Z_IDX = (1, 0), (1, 1), (0, 1)


@dataclass(frozen=True)
class ChannelDistribution:
    """Probability grid p[m, n] over the N^2 error operators."""

    dim: int
    probs: np.ndarray

    def __post_init__(self):
        n = int(self.dim)
        if n < 2:
            raise ValueError(f"dimension must be >= 2, got {n}")
        p = np.array(self.probs, dtype=np.float64)
        if p.shape != (n, n):
            raise ValueError(f"probability grid has shape {p.shape}, expected {(n, n)}")
        if np.min(p) < -CLAMP_TOL:
            raise ValueError(f"negative probability {np.min(p)!r} in grid")
        p = np.clip(p, 0.0, None)
        total = float(p.sum())
        if abs(total - 1.0) > STRUCT_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        p.setflags(write=False)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "probs", p)


@dataclass(frozen=True)
class PauliDecomposition:
    """Convex split of a qubit channel into unchanged, time-reversed, rotated
    and random fractions, with the operators attached to the smallest and
    largest of the sorted error probabilities."""

    unchanged: float
    time_reversed: float
    rotated: float
    random: float
    sigma1_idx: MEIndex
    sigma3_idx: MEIndex

    def __post_init__(self):
        parts = (self.unchanged, self.time_reversed, self.rotated, self.random)
        if min(parts) < -CLAMP_TOL:
            raise ValueError(f"negative fraction in {parts}")
        if abs(sum(parts) - 1.0) > STRUCT_TOL:
            raise ValueError(f"fractions sum to {sum(parts)!r}, expected 1")


class DepolarizingFraction(NamedTuple):
    pi: float
    scaling: float


def apply_channel(ch: ChannelDistribution, rho: DensityMatrix) -> DensityMatrix:
    """sum_mn p[m,n] U_mn rho U_mn^dag on a single N-dim system."""
    if rho.dims != (ch.dim,):
        raise ValueError(f"channel dim {ch.dim} does not match state dims {rho.dims}")
    out = np.zeros_like(rho.mat)
    for m in range(ch.dim):
        for n in range(ch.dim):
            p = ch.probs[m, n]
            if p == 0.0:
                continue
            u = error_operator(MEIndex(m, n, ch.dim))
            out = out + p * (u @ rho.mat @ u.conj().T)
    return DensityMatrix((ch.dim,), out)


def channel_to_me_mixture(ch: ChannelDistribution) -> DensityMatrix:
    """The two-party mixture sum p[m,n] |psi_mn><psi_mn| that characterizes
    the channel (its action on one half of |psi_00>)."""
    basis = _me_basis(ch.dim)
    w = ch.probs.ravel()
    mat = (basis.T * w) @ basis.conj()
    return DensityMatrix((ch.dim, ch.dim), mat)


def me_mixture_to_channel(rho: DensityMatrix) -> ChannelDistribution:
    """Read the channel probabilities off a maximally entangled mixture.

    Raises if rho has coherence across the basis (then it is not the output
    of any Heisenberg channel applied to half of |psi_00>).
    """
    decomp = me_decompose(rho)
    if decomp.residual >= ORACLE_TOL:
        raise ValueError(
            f"not a Heisenberg-channel output: off-diagonal residual {decomp.residual:.3e}"
        )
    return ChannelDistribution(decomp.dim, decomp.grid())


def pauli_decomposition(p_x: float, p_y: float, p_z: float) -> PauliDecomposition:
    """Split a qubit channel into unchanged/time-reversed/rotated/random parts.

    With p1 <= p2 <= p3 the sorted error probabilities, the fractions are
    (1-p-p2, p2-p1, p3-p2, 2(p1+p2)); ties sort x before y before z so the
    attached operators are deterministic. The split is a convex mixture only
    while the unchanged probability 1-p stays at least p2; noisier channels
    are rejected.
    """
    if min(p_x, p_y, p_z) < 0:
        raise ValueError(f"negative probability in ({p_x}, {p_y}, {p_z})")
    p = p_x + p_y + p_z
    if p > 1 + STRUCT_TOL:
        raise ValueError(f"error probabilities sum to {p!r} > 1")
    ranked = sorted(
        [(p_x, _X_IDX), (p_y, _Y_IDX), (p_z, _Z_IDX)], key=lambda item: item[0]
    )
    (p1, idx1), (p2, _), (p3, idx3) = ranked
    if 1 - p - p2 < -CLAMP_TOL:
        raise ValueError(
            f"channel too noisy for a convex split: 1 - p - p2 = {1 - p - p2!r} < 0"
        )
    return PauliDecomposition(
        unchanged=1 - p - p2,
        time_reversed=p2 - p1,
        rotated=p3 - p2,
        random=2 * (p1 + p2),
        sigma1_idx=MEIndex(*idx1, 2),
        sigma3_idx=MEIndex(*idx3, 2),
    )


def decomposition_apply(dec: PauliDecomposition, psi: StateVector) -> DensityMatrix:
    """Reconstruct the channel output from the four-fraction decomposition.

    The time-reversed term sandwiches |psi_perp> = sigma_x sigma_z |psi*>
    with the operator attached to the smallest probability.
    """
    if psi.dims != (2,):
        raise ValueError(f"expected a single qubit, got dims {psi.dims}")
    rho = np.outer(psi.amps, psi.amps.conj())
    psi_perp = error_operator(MEIndex(1, 1, 2)) @ psi.amps.conj()
    rho_perp = np.outer(psi_perp, psi_perp.conj())
    s1 = error_operator(dec.sigma1_idx)
    s3 = error_operator(dec.sigma3_idx)
    out = (
        dec.unchanged * rho
        + dec.time_reversed * (s1 @ rho_perp @ s1.conj().T)
        + dec.rotated * (s3 @ rho @ s3.conj().T)
        + dec.random * np.eye(2) / 2
    )
    return DensityMatrix((2,), out)


def named_channel(kind: str, p: float | None = None, dim: int = 2) -> ChannelDistribution:
    """Construct one of the standard channels.

    For "depolarizing", "two_pauli" and "dephasing", p is the total error
    probability 1 - p[0,0]; "two_pauli" and "dephasing" are qubit-only.
    "identity" and "fully_depolarizing" take no probability.
    """
    if kind not in NAMED_KINDS:
        raise ValueError(f"unknown channel kind {kind!r}, expected one of {NAMED_KINDS}")
    if dim < 2:
        raise ValueError(f"dimension must be >= 2, got {dim}")
    grid = np.zeros((dim, dim))
    if kind == "identity":
        grid[0, 0] = 1.0
        return ChannelDistribution(dim, grid)
    if kind == "fully_depolarizing":
        grid[:] = 1.0 / dim**2
        return ChannelDistribution(dim, grid)
    if p is None or not (0.0 <= p <= 1.0):
        raise ValueError(f"{kind} channel needs a probability in [0, 1], got {p!r}")
    if kind == "depolarizing":
        grid[:] = p / (dim**2 - 1)
        grid[0, 0] = 1.0 - p
        return ChannelDistribution(dim, grid)
    if dim != 2:
        raise ValueError(f"{kind} channel is defined for qubits only, got dim {dim}")
    grid[0, 0] = 1.0 - p
    if kind == "two_pauli":
        grid[_X_IDX] = p / 2
        grid[_Z_IDX] = p / 2
    else:  # dephasing
        grid[_Z_IDX] = p
    return ChannelDistribution(dim, grid)


def channel_fidelity(ch: ChannelDistribution, psi: StateVector) -> float:
    """Fidelity of the channel output against the pure input."""
    if psi.dims != (ch.dim,):
        raise ValueError(f"channel dim {ch.dim} does not match state dims {psi.dims}")
    return fidelity(psi, apply_channel(ch, psi.projector()))


def depolarizing_fraction(ch: ChannelDistribution) -> DepolarizingFraction:
    """Depolarizing fraction pi and scaling factor s = 1 - pi of an isotropic
    channel, defined so that the output is (1-pi) rho + pi I/N.

    Raises for anisotropic grids, naming the first entry that deviates from
    the common off-(0,0) value.
    """
    n = ch.dim
    off = ch.probs.ravel()[1:]
    reference = float(off.mean())
    deviation = np.abs(off - reference)
    worst = int(np.argmax(deviation))
    if deviation[worst] > STRUCT_TOL:
        m, nn = divmod(worst + 1, n)
        raise ValueError(
            f"channel is anisotropic: p[{m},{nn}] = {off[worst]!r} deviates from {reference!r}"
        )
    pi = (1.0 - float(ch.probs[0, 0])) * n**2 / (n**2 - 1)
    return DepolarizingFraction(pi=pi, scaling=1.0 - pi)


def channel_to_dict(ch: ChannelDistribution) -> dict:
    return {"dim": ch.dim, "probs": [[float(v) for v in row] for row in ch.probs]}


def channel_from_dict(data: dict) -> ChannelDistribution:
    """Parse either the full grid form {"dim", "probs"} or the named
    shorthand {"kind", "p", optional "dim"}."""
    if "kind" in data:
        return named_channel(data["kind"], data.get("p"), int(data.get("dim", 2)))
    try:
        dim = int(data["dim"])
        probs = data["probs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed channel object: {exc}") from exc
    return ChannelDistribution(dim, np.array(probs, dtype=np.float64))


def load_channel(path: str) -> ChannelDistribution:
    with open(path, encoding="utf-8") as fh:
        return channel_from_dict(json.load(fh))
