"""Seeded self-verification suites for the command-line front end.

Each suite replays one family of invariants with a deterministic RNG and
reports pass/fail counts plus the first counterexample. The optional fault
hook swaps in a sign-corrupted dual transform so the oracle suite can prove
it actually bites.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .config import ORACLE_TOL
from .hcm import (
    AmplitudeGrid,
    BUILD_DIM_CAP,
    build_four_partite,
    fourier_dual,
    frontier,
    grid_from_qubit_amplitudes,
    grid_to_dict,
    isotropic_hcm,
    output_channels,
    random_grid,
)
from .channels import ChannelDistribution, depolarizing_fraction
from .linalg import partial_trace
from .mestates import me_decompose, verify_resolution_identity
from .pcm import random_amplitudes, repartition
from .uncertainty import entropic_check, marginal_entropic_check, robertson_check

FAULTS = ("defbeta-sign",)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, describe) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = describe()


def _dual_with_sign_fault(grid: AmplitudeGrid) -> AmplitudeGrid:
    # deliberately wrong sign on the m*y phase term; unitary, so it still
    # yields a normalized grid and only the oracle can tell the difference
    n = grid.dim
    idx = np.arange(n)
    phase = np.exp(2j * np.pi * np.outer(idx, idx) / n)
    beta = (phase @ grid.alpha @ phase).T / n
    return AmplitudeGrid(n, beta)


def suite_resolution_identity(max_dim: int) -> SuiteResult:
    result = SuiteResult("resolution-of-identity")
    for n in range(2, min(max_dim, 8) + 1):
        residual = verify_resolution_identity(n)
        result.record(residual < 1e-12, lambda n=n, r=residual: f"dim {n}: residual {r:.3e}")
    return result


def suite_fourier_oracle(
    max_dim: int, samples: int, rng: np.random.Generator, tol: float, fault: str | None = None
) -> SuiteResult:
    result = SuiteResult("fourier-oracle")
    dual = _dual_with_sign_fault if fault == "defbeta-sign" else fourier_dual
    for n in range(2, min(max_dim, BUILD_DIM_CAP) + 1):
        for _ in range(samples):
            grid = random_grid(n, rng)
            predicted = np.abs(dual(grid).alpha) ** 2
            decomp = me_decompose(partial_trace(build_four_partite(grid), (0, 2)))
            mismatch = float(np.max(np.abs(predicted - decomp.grid())))
            ok = mismatch < tol and decomp.residual < tol
            result.record(
                ok,
                lambda g=grid, m=mismatch, r=decomp.residual: (
                    f"dim {g.dim}: weight mismatch {m:.3e}, residual {r:.3e}, "
                    f"grid {json.dumps(grid_to_dict(g))}"
                ),
            )
    return result


def suite_repartition_oracle(samples: int, rng: np.random.Generator, tol: float) -> SuiteResult:
    result = SuiteResult("repartition-oracle")
    for _ in range(samples):
        amps = random_amplitudes(rng)
        psi = build_four_partite(grid_from_qubit_amplitudes(amps))
        checks = []
        for partition, keep in (("RB_AC", (0, 2)), ("RC_AB", (0, 3))):
            moved = repartition(amps, partition)
            weights = me_decompose(partial_trace(psi, keep)).grid().ravel()
            checks.append(
                float(np.max(np.abs(np.abs(moved.as_array()) ** 2 - weights)))
            )
            back = repartition(moved, partition)
            checks.append(float(np.max(np.abs(back.as_array() - amps.as_array()))))
        worst = max(checks)
        result.record(
            max(checks[0], checks[2]) < tol and max(checks[1], checks[3]) < 1e-12,
            lambda a=amps, w=worst: f"amplitudes {np.round(a.as_array(), 6).tolist()}: worst {w:.3e}",
        )
    return result


def suite_frontier(max_dim: int, samples: int, tol: float) -> SuiteResult:
    result = SuiteResult("frontier")
    for n in range(2, min(max_dim, BUILD_DIM_CAP) + 1):
        for point in frontier(n, samples):
            form = point.a**2 + 2 * point.a * point.b / n + point.b**2
            out = output_channels(isotropic_hcm(point.a, n).grid())
            pi_a = depolarizing_fraction(out.a).pi
            pi_b = depolarizing_fraction(out.b).pi
            ok = (
                abs(form - 1.0) < 1e-12
                and abs(pi_a - point.pi_a) < tol
                and abs(pi_b - point.pi_b) < tol
            )
            result.record(
                ok,
                lambda n=n, p=point, pa=pi_a, pb=pi_b: (
                    f"dim {n}, a={p.a:.6f}: simulated fractions ({pa:.6e}, {pb:.6e}) "
                    f"vs ({p.pi_a:.6e}, {p.pi_b:.6e})"
                ),
            )
    return result


def suite_uncertainty(max_dim: int, samples: int, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("uncertainty")
    for n in range(2, min(max_dim, BUILD_DIM_CAP) + 1):
        for _ in range(samples):
            grid = random_grid(n, rng)
            p = ChannelDistribution(n, np.abs(grid.alpha) ** 2)
            q = ChannelDistribution(n, np.abs(fourier_dual(grid).alpha) ** 2)
            reports = [entropic_check(p, q), *marginal_entropic_check(grid)]
            ok = all(r.satisfied for r in reports)
            result.record(
                ok,
                lambda g=grid, r=reports: (
                    f"dim {g.dim}: slacks {[x.slack for x in r]}, "
                    f"grid {json.dumps(grid_to_dict(g))}"
                ),
            )
    for _ in range(samples):
        amps = random_amplitudes(rng)
        reports = [robertson_check(amps, 1), robertson_check(amps, 2)]
        result.record(
            all(r.satisfied for r in reports),
            lambda a=amps, r=reports: (
                f"amplitudes {np.round(a.as_array(), 6).tolist()}: "
                f"slacks {[x.slack for x in r]}"
            ),
        )
    return result


def run_all(
    dim: int,
    samples: int,
    seed: int,
    tolerance: float = ORACLE_TOL,
    fault: str | None = None,
) -> list[SuiteResult]:
    """Run every suite with one seeded RNG; deterministic for a fixed config."""
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}, expected one of {FAULTS}")
    rng = np.random.default_rng(seed)
    return [
        suite_resolution_identity(max(dim, 8)),
        suite_fourier_oracle(dim, samples, rng, tolerance, fault),
        suite_repartition_oracle(samples, rng, tolerance),
        suite_frontier(dim, samples, tolerance),
        suite_uncertainty(dim, samples, rng),
    ]
