"""Variance and entropy inequalities bounding the quality of two clones.

The probability grids feeding the two outputs are squared moduli of a
function and its dual transform, so they obey uncertainty relations: a
variance-product bound (from the commutator of half-Pauli observables on the
amplitude vector) and entropic bounds on the full grids and their marginals.
All entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelDistribution
from .hcm import AmplitudeGrid, fourier_dual
from .linalg import ProbDist, shannon_entropy
from .pcm import DoubleBellAmplitudes, repartition

SLACK_TOL = 1e-12


@dataclass(frozen=True)
class UncertaintyReport:
    lhs: float
    rhs: float
    satisfied: bool
    slack: float

    @classmethod
    def compare(cls, lhs: float, rhs: float) -> "UncertaintyReport":
        slack = lhs - rhs
        return cls(lhs=lhs, rhs=rhs, satisfied=slack >= -SLACK_TOL, slack=slack)


def robertson_check(amps: DoubleBellAmplitudes, variant: int = 1) -> UncertaintyReport:
    """Variance-product bound between the two clones' marginal distributions.

    Variant 1 bounds var(p_m) * var(q_n'), variant 2 bounds the dual pair
    var(p_n) * var(q_m'); both are exact consequences of the commutator of
    the half spin observables, so they hold for every machine.
    """
    if variant not in (1, 2):
        raise ValueError(f"variant must be 1 or 2, got {variant!r}")
    v, z, x, y = amps.v, amps.z, amps.x, amps.y
    primed = repartition(amps, "RB_AC")
    vp, zp, xp, yp = primed.v, primed.z, primed.x, primed.y
    if variant == 1:
        lhs = (
            (abs(v) ** 2 + abs(z) ** 2) * (abs(x) ** 2 + abs(y) ** 2)
            * (abs(vp) ** 2 + abs(xp) ** 2) * (abs(zp) ** 2 + abs(yp) ** 2)
        )
        rhs = 0.25 * (v.conjugate() * x + z.conjugate() * y).imag ** 2
    else:
        lhs = (
            (abs(v) ** 2 + abs(x) ** 2) * (abs(z) ** 2 + abs(y) ** 2)
            * (abs(vp) ** 2 + abs(zp) ** 2) * (abs(xp) ** 2 + abs(yp) ** 2)
        )
        rhs = 0.25 * (v.conjugate() * z + x.conjugate() * y).imag ** 2
    return UncertaintyReport.compare(lhs, rhs)


def entropic_check(p: ChannelDistribution, q: ChannelDistribution) -> UncertaintyReport:
    """H[p] + H[q] >= 2 log2 N for the two output channels of one machine.

    The caller guarantees that q is the dual of p's amplitude grid; only the
    sizes are validated here. Saturated exactly when one clone is perfect.
    """
    if p.dim != q.dim:
        raise ValueError(f"channel dimensions differ: {p.dim} vs {q.dim}")
    lhs = shannon_entropy(ProbDist(p.probs.ravel())) + shannon_entropy(
        ProbDist(q.probs.ravel())
    )
    return UncertaintyReport.compare(lhs, 2.0 * math.log2(p.dim))


def marginal_entropic_check(
    grid: AmplitudeGrid,
) -> tuple[UncertaintyReport, UncertaintyReport]:
    """H[p_m] + H[q_n] >= log2 N and H[p_n] + H[q_m] >= log2 N.

    The shift index of one clone's grid is conjugate to the phase index of
    the other's, so each marginal pair obeys a single-register bound.
    """
    p = np.abs(grid.alpha) ** 2
    q = np.abs(fourier_dual(grid).alpha) ** 2
    bound = math.log2(grid.dim)
    first = UncertaintyReport.compare(
        shannon_entropy(ProbDist(p.sum(axis=1))) + shannon_entropy(ProbDist(q.sum(axis=0))),
        bound,
    )
    second = UncertaintyReport.compare(
        shannon_entropy(ProbDist(p.sum(axis=0))) + shannon_entropy(ProbDist(q.sum(axis=1))),
        bound,
    )
    return first, second
