"""Qubit cloning machines built on the double-Bell parametrization.

A machine is fixed by four amplitudes (v, z, x, y) weighting the products
|Phi+>|Phi+>, |Phi->|Phi->, |Psi+>|Psi+>, |Psi->|Psi-> on the (RA)(BC)
pairing of reference, two clones and ancilla. Re-pairing the four qubits is
a linear map on these amplitudes, and the squared amplitudes of each pairing
are the error probabilities of the channel feeding the corresponding output.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelDistribution
from .config import STRUCT_TOL
from .linalg import StateVector

PARTITIONS = ("RB_AC", "RC_AB")

# involutive re-pairing map; rows/columns ordered (v, z, x, y)
_SWAP_AB = np.array(
    [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
    ]
) / 2.0
_Y_FLIP = np.diag([1.0, 1.0, 1.0, -1.0])
# same map conjugated by a sign flip of the doubly antisymmetric slot
_SWAP_AC = _Y_FLIP @ _SWAP_AB @ _Y_FLIP


@dataclass(frozen=True)
class DoubleBellAmplitudes:
    """Amplitudes (v, z, x, y) of the four double-Bell components."""

    v: complex
    z: complex
    x: complex
    y: complex

    def __post_init__(self):
        norm_sq = abs(self.v) ** 2 + abs(self.z) ** 2 + abs(self.x) ** 2 + abs(self.y) ** 2
        if abs(norm_sq - 1.0) > STRUCT_TOL:
            raise ValueError(f"amplitudes are not normalized: |.|^2 = {norm_sq!r}")

    @classmethod
    def from_array(cls, arr) -> "DoubleBellAmplitudes":
        v, z, x, y = (complex(c) for c in arr)
        return cls(v, z, x, y)

    def as_array(self) -> np.ndarray:
        return np.array([self.v, self.z, self.x, self.y], dtype=np.complex128)

    def grid_array(self) -> np.ndarray:
        """Amplitudes as the 2x2 grid [[v, z], [x, y]] indexed by (m, n)."""
        return self.as_array().reshape(2, 2)

    def channel(self) -> ChannelDistribution:
        """Error probabilities of the channel feeding the first output."""
        return ChannelDistribution(2, np.abs(self.grid_array()) ** 2)


def repartition(amps: DoubleBellAmplitudes, partition: str) -> DoubleBellAmplitudes:
    """Amplitudes of the same four-qubit state on a different pairing.

    "RB_AC" exchanges the two clones; "RC_AB" exchanges clone and ancilla.
    Both maps are involutions and preserve the norm.
    """
    if partition == "RB_AC":
        matrix = _SWAP_AB
    elif partition == "RC_AB":
        matrix = _SWAP_AC
    else:
        raise ValueError(f"unknown partition {partition!r}, expected one of {PARTITIONS}")
    return DoubleBellAmplitudes.from_array(matrix @ amps.as_array())


@dataclass(frozen=True)
class RepartitionEigenReport:
    """Residuals of the structural identities of the re-pairing map."""

    involution_residual: float
    eigenvalue_one_residual: float
    eigenvalue_minus_one_residual: float

    @property
    def ok(self) -> bool:
        worst = max(
            self.involution_residual,
            self.eigenvalue_one_residual,
            self.eigenvalue_minus_one_residual,
        )
        return worst < 1e-12


def repartition_matrix_eigencheck() -> RepartitionEigenReport:
    """Check that the clone-swap map squares to the identity, fixes the
    direction (3,1,1,1) and negates the direction (-1,1,1,1)."""
    u = _SWAP_AB
    involution = float(np.linalg.norm(u @ u - np.eye(4)))
    fixed = np.array([3.0, 1.0, 1.0, 1.0]) / math.sqrt(12.0)
    negated = np.array([-1.0, 1.0, 1.0, 1.0]) / 2.0
    return RepartitionEigenReport(
        involution_residual=involution,
        eigenvalue_one_residual=float(np.linalg.norm(u @ fixed - fixed)),
        eigenvalue_minus_one_residual=float(np.linalg.norm(u @ negated + negated)),
    )


def isotropic_pcm_from_x(x: float, phase: float = 0.0):
    """Machine whose both outputs are depolarizing, parametrized by the flat
    amplitude x of the first output.

    On the saturated trade-off curve (phase 0) the second output has
    x' = (-x + sqrt(1 - 3 x^2)) / 2 and the two error probabilities are
    p = 3 x^2 and p' = 3 x'^2. A nonzero relative phase between x and v
    explores the non-saturated machines. Returns (x', amplitudes).
    """
    if not (0.0 <= x <= 0.5 + STRUCT_TOL):
        raise ValueError(f"x must lie in [0, 1/2], got {x!r}")
    x = min(x, 0.5)
    v = math.sqrt(max(0.0, 1.0 - 3.0 * x * x))
    rotated = x * cmath.exp(1j * phase)
    amps = DoubleBellAmplitudes(v, rotated, rotated, rotated)
    x_prime = abs((v - rotated) / 2.0)
    return x_prime, amps


@dataclass(frozen=True)
class IsotropicPCM:
    """Both-outputs-depolarizing machine in flat/peaked coordinates.

    a and b are the flat amplitudes of the two outputs, a_hat and b_hat the
    peaked ones (a_hat = b, b_hat = a); c and d are the coordinates on the
    two eigendirections of the re-pairing map.
    """

    a: float
    b: float
    a_hat: float
    b_hat: float
    c: float
    d: float

    def __post_init__(self):
        if min(self.a, self.b) < -STRUCT_TOL:
            raise ValueError("flat amplitudes must be nonnegative")
        form = self.a**2 + self.a * self.b + self.b**2
        if abs(form - 1.0) > STRUCT_TOL:
            raise ValueError(f"a^2 + ab + b^2 = {form!r}, expected 1")
        checks = (
            abs(self.a - 2 * (self.c + self.d)),
            abs(self.b - 2 * (self.c - self.d)),
            abs(self.a_hat - self.b),
            abs(self.b_hat - self.a),
            abs(12 * self.c**2 + 4 * self.d**2 - 1.0),
        )
        if max(checks) > STRUCT_TOL:
            raise ValueError("inconsistent flat/peaked/eigen coordinates")

    @property
    def pi_a(self) -> float:
        return self.a**2

    @property
    def pi_b(self) -> float:
        return self.b**2

    def amplitudes(self) -> DoubleBellAmplitudes:
        return DoubleBellAmplitudes(
            self.a_hat + self.a / 2, self.a / 2, self.a / 2, self.a / 2
        )


def isotropic_pcm_ab(a: float) -> IsotropicPCM:
    """Saturated isotropic machine with flat amplitude a on the first output.

    Solves a^2 + ab + b^2 = 1 for the nonnegative b; the depolarizing
    fractions of the outputs are a^2 and b^2.
    """
    if not (0.0 <= a <= 1.0 + STRUCT_TOL):
        raise ValueError(f"a must lie in [0, 1], got {a!r}")
    a = min(a, 1.0)
    b = (-a + math.sqrt(4.0 - 3.0 * a * a)) / 2.0
    return IsotropicPCM(
        a=a, b=b, a_hat=b, b_hat=a, c=(a + b) / 4.0, d=(a - b) / 4.0
    )


@dataclass(frozen=True)
class SymmetricPCMPoint:
    """Point of the family whose two clones see the same channel.

    (x, y, z) are the square roots of the channel error probabilities; they
    satisfy v = x + y + z and lie on the surface
    x^2 + y^2 + z^2 + xy + xz + yz = 1/2. With rc_variant set, the duplicate
    pair is (first clone, ancilla) instead, which flips the sign of the
    Psi- amplitude in the underlying state but not the channel point.
    """

    theta: float
    phi: float
    x: float
    y: float
    z: float
    v: float
    rc_variant: bool = False

    def __post_init__(self):
        if min(self.x, self.y, self.z) < -STRUCT_TOL:
            raise ValueError("channel coordinates must be nonnegative")
        if abs(self.v - (self.x + self.y + self.z)) > STRUCT_TOL:
            raise ValueError("v must equal x + y + z")
        form = (
            self.x**2 + self.y**2 + self.z**2
            + self.x * self.y + self.x * self.z + self.y * self.z
        )
        if abs(form - 0.5) > STRUCT_TOL:
            raise ValueError(f"surface constraint violated: form = {form!r}")

    def amplitudes(self) -> DoubleBellAmplitudes:
        y = -self.y if self.rc_variant else self.y
        return DoubleBellAmplitudes(self.v, self.z, self.x, y)


def symmetric_pcm(theta: float, phi: float, rc_variant: bool = False) -> SymmetricPCMPoint:
    """Parametric point of the equal-clone-channel surface.

    theta measures the distance from the depolarizing pole, phi distributes
    the error weight among the three directions. Points leaving the first
    octant are rejected rather than reflected.
    """
    polar = math.sqrt(1.0 / 12.0) * math.cos(theta)
    radial = math.sqrt(2.0 / 3.0) * math.sin(theta)
    x = polar + radial * math.cos(phi)
    y = polar + radial * math.cos(phi + 2.0 * math.pi / 3.0)
    z = polar + radial * math.cos(phi + 4.0 * math.pi / 3.0)
    if min(x, y, z) < -STRUCT_TOL:
        raise ValueError(
            f"(theta={theta!r}, phi={phi!r}) leaves the first octant: "
            f"(x, y, z) = ({x!r}, {y!r}, {z!r})"
        )
    x, y, z = max(x, 0.0), max(y, 0.0), max(z, 0.0)
    return SymmetricPCMPoint(theta, phi, x, y, z, x + y + z, rc_variant)


def ucm_qubit() -> DoubleBellAmplitudes:
    """The universal machine: the symmetric, isotropic member with both
    clones fed by a depolarizing channel of probability 1/4."""
    w = math.sqrt(1.0 / 12.0)
    return DoubleBellAmplitudes(math.sqrt(3.0 / 4.0), w, w, w)


def ucm_unitary_apply(psi: StateVector) -> StateVector:
    """Run a qubit through the unitary realization of the universal machine.

    Returns the three-qubit output over (A, B, C); each clone's reduced
    state is (2/3)|psi><psi| + I/6.
    """
    if psi.dims != (2,):
        raise ValueError(f"expected a single qubit, got dims {psi.dims}")
    image0 = np.zeros(8, dtype=np.complex128)
    image0[0b000] = math.sqrt(2.0 / 3.0)
    image0[0b011] = math.sqrt(1.0 / 6.0)
    image0[0b101] = math.sqrt(1.0 / 6.0)
    image1 = np.zeros(8, dtype=np.complex128)
    image1[0b111] = math.sqrt(2.0 / 3.0)
    image1[0b010] = math.sqrt(1.0 / 6.0)
    image1[0b100] = math.sqrt(1.0 / 6.0)
    return StateVector((2, 2, 2), psi.amps[0] * image0 + psi.amps[1] * image1)


def triplicator(x: float) -> DoubleBellAmplitudes:
    """Machine whose three outputs all see the same channel.

    The family is v = x + z with no Psi- component; z is the nonnegative
    root of x^2 + z^2 + xz = 1/2. The best member sits at x = z = 1/sqrt(6).
    """
    limit = 1.0 / math.sqrt(2.0)
    if not (0.0 <= x <= limit + STRUCT_TOL):
        raise ValueError(f"x must lie in [0, 1/sqrt(2)], got {x!r}")
    x = min(x, limit)
    z = (-x + math.sqrt(2.0 - 3.0 * x * x)) / 2.0
    return DoubleBellAmplitudes(x + z, z, x, 0.0)


@dataclass(frozen=True)
class CapacityBound:
    """Upper bound on the quantum capacity of a qubit channel.

    region records where (sqrt(p_x), sqrt(p_y), sqrt(p_z)) sits relative to
    the equal-clone-channel surface; outside it the capacity vanishes, inside
    the bound interpolates linearly from the perfect channel.
    """

    bound: float
    quadratic_form: float
    region: str


def capacity_upper_bound(p_x: float, p_y: float, p_z: float) -> CapacityBound:
    """max(0, 1 - 2(x^2+y^2+z^2+xy+xz+yz)) with x = sqrt(p_x) and so on."""
    if min(p_x, p_y, p_z) < 0:
        raise ValueError(f"negative probability in ({p_x}, {p_y}, {p_z})")
    if p_x + p_y + p_z > 1 + STRUCT_TOL:
        raise ValueError(f"error probabilities sum to {p_x + p_y + p_z!r} > 1")
    form = (
        p_x + p_y + p_z
        + math.sqrt(p_x * p_y) + math.sqrt(p_x * p_z) + math.sqrt(p_y * p_z)
    )
    if abs(form - 0.5) <= 1e-12:
        region = "on"
    elif form > 0.5:
        region = "outside"
    else:
        region = "inside"
    bound = max(0.0, 1.0 - 2.0 * form) if region == "inside" else 0.0
    return CapacityBound(bound, form, region)


def random_amplitudes(rng: np.random.Generator) -> DoubleBellAmplitudes:
    """Random machine: normal magnitudes, uniform phases, normalized."""
    mags = np.abs(rng.normal(size=4))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=4)
    arr = mags * np.exp(1j * phases)
    return DoubleBellAmplitudes.from_array(arr / np.linalg.norm(arr))
