"""Asymmetric quantum cloning machines in any dimension.

Exact construction of the machines, their output channels, the no-cloning
frontiers and the uncertainty relations that enforce them, all verified
against brute-force partial-trace oracles.
"""

from .channels import (
    ChannelDistribution,
    DepolarizingFraction,
    PauliDecomposition,
    apply_channel,
    channel_fidelity,
    channel_from_dict,
    channel_to_dict,
    channel_to_me_mixture,
    decomposition_apply,
    depolarizing_fraction,
    load_channel,
    me_mixture_to_channel,
    named_channel,
    pauli_decomposition,
)
from .config import ORACLE_TOL, STRUCT_TOL
from .hcm import (
    AmplitudeGrid,
    FrontierPoint,
    IsotropicHCM,
    OutputChannels,
    build_four_partite,
    fourier_dual,
    frontier,
    grid_from_dict,
    grid_from_qubit_amplitudes,
    grid_to_dict,
    isotropic_hcm,
    load_grid,
    output_channels,
    random_grid,
    ucm_ndim,
)
from .linalg import (
    DensityMatrix,
    ProbDist,
    StateVector,
    fidelity,
    partial_trace,
    random_state,
    shannon_entropy,
    tensor_product,
)
from .mestates import (
    MEDecomposition,
    MEIndex,
    error_operator,
    local_action,
    me_decompose,
    me_state,
    verify_resolution_identity,
)
from .pcm import (
    CapacityBound,
    DoubleBellAmplitudes,
    IsotropicPCM,
    SymmetricPCMPoint,
    capacity_upper_bound,
    isotropic_pcm_ab,
    isotropic_pcm_from_x,
    random_amplitudes,
    repartition,
    repartition_matrix_eigencheck,
    symmetric_pcm,
    triplicator,
    ucm_qubit,
    ucm_unitary_apply,
)
from .uncertainty import (
    UncertaintyReport,
    entropic_check,
    marginal_entropic_check,
    robertson_check,
)

__all__ = [
    "AmplitudeGrid",
    "CapacityBound",
    "ChannelDistribution",
    "DensityMatrix",
    "DepolarizingFraction",
    "DoubleBellAmplitudes",
    "FrontierPoint",
    "IsotropicHCM",
    "IsotropicPCM",
    "MEDecomposition",
    "MEIndex",
    "ORACLE_TOL",
    "OutputChannels",
    "PauliDecomposition",
    "ProbDist",
    "STRUCT_TOL",
    "StateVector",
    "SymmetricPCMPoint",
    "UncertaintyReport",
    "apply_channel",
    "build_four_partite",
    "capacity_upper_bound",
    "channel_fidelity",
    "channel_from_dict",
    "channel_to_dict",
    "channel_to_me_mixture",
    "decomposition_apply",
    "depolarizing_fraction",
    "entropic_check",
    "error_operator",
    "fidelity",
    "fourier_dual",
    "frontier",
    "grid_from_dict",
    "grid_from_qubit_amplitudes",
    "grid_to_dict",
    "isotropic_hcm",
    "isotropic_pcm_ab",
    "isotropic_pcm_from_x",
    "load_channel",
    "load_grid",
    "local_action",
    "marginal_entropic_check",
    "me_decompose",
    "me_mixture_to_channel",
    "me_state",
    "named_channel",
    "output_channels",
    "partial_trace",
    "pauli_decomposition",
    "random_amplitudes",
    "random_grid",
    "random_state",
    "repartition",
    "repartition_matrix_eigencheck",
    "robertson_check",
    "shannon_entropy",
    "symmetric_pcm",
    "tensor_product",
    "triplicator",
    "ucm_ndim",
    "ucm_qubit",
    "ucm_unitary_apply",
    "verify_resolution_identity",
]

__version__ = "0.1.0"
