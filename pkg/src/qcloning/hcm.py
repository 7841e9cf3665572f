"""N-dimensional cloning machines and their Fourier-dual output channels.

A machine is an N x N complex grid alpha[m, n]: the four-party state is the
superposition sum alpha[m,n] |psi_mn>_{RA} |psi_{m,N-n}>_{BC}. The first
clone then sees the channel |alpha|^2 while the second sees |beta|^2, where
beta is the mixed-sign two-dimensional discrete Fourier transform

    beta[m, n] = (1/N) sum_{x,y} exp(2*pi*i*(n*x - m*y)/N) alpha[x, y].

That transform is its own inverse, so a peaked grid on one side forces a
flat grid on the other; this duality is the engine behind every no-cloning
statement in the package. Full four-party builds are capped at dim 6 (the
state vector has length N^4); the analytic constructors have no cap.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channels import ChannelDistribution
from .config import ORACLE_TOL, STRUCT_TOL
from .linalg import StateVector, partial_trace
from .mestates import MEDecomposition, _me_amps, me_decompose
from .pcm import DoubleBellAmplitudes

BUILD_DIM_CAP = 6


@dataclass(frozen=True)
class AmplitudeGrid:
    """Normalized N x N complex amplitude grid defining a cloning machine."""

    dim: int
    alpha: np.ndarray

    def __post_init__(self):
        n = int(self.dim)
        if n < 2:
            raise ValueError(f"dimension must be >= 2, got {n}")
        alpha = np.array(self.alpha, dtype=np.complex128)
        if alpha.shape != (n, n):
            raise ValueError(f"grid has shape {alpha.shape}, expected {(n, n)}")
        norm_sq = float(np.sum(np.abs(alpha) ** 2))
        if abs(norm_sq - 1.0) > STRUCT_TOL:
            raise ValueError(f"grid is not normalized: sum |alpha|^2 = {norm_sq!r}")
        alpha.setflags(write=False)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "alpha", alpha)


class OutputChannels(NamedTuple):
    a: ChannelDistribution
    b: ChannelDistribution
    c: MEDecomposition


class FrontierPoint(NamedTuple):
    a: float
    b: float
    pi_a: float
    pi_b: float


def grid_from_qubit_amplitudes(amps: DoubleBellAmplitudes) -> AmplitudeGrid:
    return AmplitudeGrid(2, amps.grid_array())


def fourier_dual(grid: AmplitudeGrid) -> AmplitudeGrid:
    """The dual grid feeding the second clone; exactly involutive."""
    n = grid.dim
    idx = np.arange(n)
    phase = np.exp(2j * np.pi * np.outer(idx, idx) / n)
    beta = (phase @ grid.alpha @ phase.conj()).T / n
    return AmplitudeGrid(n, beta)


def build_four_partite(grid: AmplitudeGrid) -> StateVector:
    """Assemble the full state over (R, A, B, C), each subsystem of dim N."""
    n = grid.dim
    if n > BUILD_DIM_CAP:
        raise ValueError(f"four-party builds are capped at dim {BUILD_DIM_CAP}, got {n}")
    total = np.zeros(n**4, dtype=np.complex128)
    for m in range(n):
        for nn in range(n):
            a = grid.alpha[m, nn]
            if a == 0:
                continue
            total += a * np.kron(_me_amps(m, nn, n), _me_amps(m, (n - nn) % n, n))
    return StateVector((n, n, n, n), total)


def output_channels(grid: AmplitudeGrid) -> OutputChannels:
    """Channels feeding the two clones plus the decomposition of the ancilla.

    The analytic grids |alpha|^2 and |dual|^2 are cross-checked against the
    brute-force partial traces of the assembled four-party state; any
    disagreement is an internal consistency error. The ancilla pair (R, C)
    is returned as a decomposition with its residual, which may be nonzero
    for dim > 2.
    """
    n = grid.dim
    ch_a = ChannelDistribution(n, np.abs(grid.alpha) ** 2)
    ch_b = ChannelDistribution(n, np.abs(fourier_dual(grid).alpha) ** 2)
    psi = build_four_partite(grid)
    checks = (
        ("A", ch_a, me_decompose(partial_trace(psi, (0, 1)))),
        ("B", ch_b, me_decompose(partial_trace(psi, (0, 2)))),
    )
    for name, ch, decomp in checks:
        mismatch = float(np.max(np.abs(ch.probs - decomp.grid())))
        if mismatch >= ORACLE_TOL or decomp.residual >= ORACLE_TOL:
            raise RuntimeError(
                f"output {name} disagrees with the brute-force trace: "
                f"weight mismatch {mismatch:.3e}, residual {decomp.residual:.3e}"
            )
    return OutputChannels(ch_a, ch_b, me_decompose(partial_trace(psi, (0, 3))))


@dataclass(frozen=True)
class IsotropicHCM:
    """Machine whose both clones see N-dimensional depolarizing channels.

    a and b are the flat amplitudes, a_hat = b and b_hat = a the peaked ones;
    depolarizing fractions are a^2 and b^2.
    """

    dim: int
    a: float
    b: float
    a_hat: float
    b_hat: float

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"dimension must be >= 2, got {self.dim}")
        if min(self.a, self.b) < -STRUCT_TOL:
            raise ValueError("flat amplitudes must be nonnegative")
        form = self.a**2 + 2.0 * self.a * self.b / self.dim + self.b**2
        if abs(form - 1.0) > STRUCT_TOL:
            raise ValueError(f"a^2 + (2/N)ab + b^2 = {form!r}, expected 1")
        if abs(self.a_hat - self.b) > STRUCT_TOL or abs(self.b_hat - self.a) > STRUCT_TOL:
            raise ValueError("peaked amplitudes must be the swapped flat ones")

    @property
    def pi_a(self) -> float:
        return self.a**2

    @property
    def pi_b(self) -> float:
        return self.b**2

    def grid(self) -> AmplitudeGrid:
        """Peaked-plus-flat grid alpha = a_hat * P + (a/N) * ones."""
        alpha = np.full((self.dim, self.dim), self.a / self.dim, dtype=np.complex128)
        alpha[0, 0] += self.a_hat
        return AmplitudeGrid(self.dim, alpha)


def isotropic_hcm(a: float, dim: int) -> IsotropicHCM:
    """Saturated isotropic machine with depolarizing fraction a^2 on the
    first clone; b is the nonnegative root of a^2 + (2/N)ab + b^2 = 1."""
    if not (0.0 <= a <= 1.0 + STRUCT_TOL):
        raise ValueError(f"a must lie in [0, 1], got {a!r}")
    a = min(a, 1.0)
    b = -a / dim + math.sqrt(1.0 - a * a * (1.0 - 1.0 / dim**2))
    return IsotropicHCM(dim=dim, a=a, b=b, a_hat=b, b_hat=a)


def frontier(dim: int, samples: int) -> list[FrontierPoint]:
    """Sample the saturated no-cloning curve a^2 + (2/N)ab + b^2 = 1.

    Points run from (0, 1) to (1, 0), uniformly in the angular parameter of
    the ellipse arc, so an odd count contains the exact symmetric point
    a = b = sqrt(N / (2(N+1))) in the middle and two samples give exactly
    the endpoints.
    """
    if dim < 2:
        raise ValueError(f"dimension must be >= 2, got {dim}")
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    semi_minor = math.sqrt(dim / (dim + 1.0))
    semi_major = math.sqrt(dim / (dim - 1.0))
    t_edge = math.atan2(semi_minor, semi_major)
    points = []
    for t in np.linspace(-t_edge, t_edge, samples):
        u = semi_minor * math.cos(t) / math.sqrt(2.0)
        w = semi_major * math.sin(t) / math.sqrt(2.0)
        # rounding at the endpoints leaves O(1e-17) dust on the zero coordinate
        a = 0.0 if abs(u + w) < 1e-14 else u + w
        b = 0.0 if abs(u - w) < 1e-14 else u - w
        points.append(FrontierPoint(a=a, b=b, pi_a=a * a, pi_b=b * b))
    return points


def ucm_ndim(dim: int) -> AmplitudeGrid:
    """The N-dimensional universal machine: symmetric and isotropic, with
    equal flat and peaked amplitudes sqrt(N / (2(N+1))) and scaling factor
    (N+2) / (2(N+1)) on both clones."""
    if dim < 2:
        raise ValueError(f"dimension must be >= 2, got {dim}")
    a = math.sqrt(dim / (2.0 * (dim + 1.0)))
    return IsotropicHCM(dim=dim, a=a, b=a, a_hat=a, b_hat=a).grid()


def random_grid(dim: int, rng: np.random.Generator) -> AmplitudeGrid:
    """Generic machine: normal magnitudes, independent uniform phases."""
    mags = np.abs(rng.normal(size=(dim, dim)))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(dim, dim))
    alpha = mags * np.exp(1j * phases)
    return AmplitudeGrid(dim, alpha / np.linalg.norm(alpha))


def grid_to_dict(grid: AmplitudeGrid) -> dict:
    entries = []
    for m in range(grid.dim):
        for n in range(grid.dim):
            a = grid.alpha[m, n]
            if a != 0:
                entries.append({"m": m, "n": n, "re": float(a.real), "im": float(a.imag)})
    return {"dim": grid.dim, "alpha": entries}


def grid_from_dict(data: dict) -> AmplitudeGrid:
    """Parse {"dim": N, "alpha": [{"m", "n", "re", "im"}, ...]}; omitted
    entries are zero."""
    try:
        dim = int(data["dim"])
        entries = data["alpha"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed grid object: {exc}") from exc
    alpha = np.zeros((dim, dim), dtype=np.complex128)
    seen = set()
    for entry in entries:
        try:
            m, n = int(entry["m"]), int(entry["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed grid entry {entry!r}: {exc}") from exc
        if not (0 <= m < dim and 0 <= n < dim):
            raise ValueError(f"grid entry ({m}, {n}) out of range for dim {dim}")
        if (m, n) in seen:
            raise ValueError(f"duplicate grid entry ({m}, {n})")
        seen.add((m, n))
        alpha[m, n] = float(entry.get("re", 0.0)) + 1j * float(entry.get("im", 0.0))
    return AmplitudeGrid(dim, alpha)


def load_grid(path: str) -> AmplitudeGrid:
    with open(path, encoding="utf-8") as fh:
        return grid_from_dict(json.load(fh))
