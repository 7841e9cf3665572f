import cmath
import math

import numpy as np
import pytest

from qcloning.channels import ChannelDistribution
from qcloning.hcm import AmplitudeGrid, fourier_dual, random_grid
from qcloning.pcm import DoubleBellAmplitudes, random_amplitudes, ucm_qubit
from qcloning.uncertainty import entropic_check, marginal_entropic_check, robertson_check


def channel_pair(grid):
    p = ChannelDistribution(grid.dim, np.abs(grid.alpha) ** 2)
    q = ChannelDistribution(grid.dim, np.abs(fourier_dual(grid).alpha) ** 2)
    return p, q


def delta_grid(dim):
    alpha = np.zeros((dim, dim), dtype=complex)
    alpha[0, 0] = 1.0
    return AmplitudeGrid(dim, alpha)


class TestRobertson:
    def test_ucm_bound_is_loose(self):
        for variant in (1, 2):
            report = robertson_check(ucm_qubit(), variant)
            assert report.rhs == 0.0
            assert report.lhs == pytest.approx(25 / 1296, abs=1e-12)
            assert report.satisfied
            assert report.slack > 0.0  # not saturated

    def test_peaked_machine_saturates_at_zero(self):
        report = robertson_check(DoubleBellAmplitudes(1.0, 0.0, 0.0, 0.0), 1)
        assert report.lhs == pytest.approx(0.0, abs=1e-15)
        assert report.rhs == pytest.approx(0.0, abs=1e-15)
        assert report.satisfied

    @pytest.mark.parametrize("variant", [1, 2])
    def test_random_machines_satisfy_the_bound(self, variant):
        rng = np.random.default_rng(variant)
        for _ in range(1000):
            report = robertson_check(random_amplitudes(rng), variant)
            assert report.satisfied

    def test_rhs_invariant_under_global_phase(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            amps = random_amplitudes(rng)
            phase = cmath.exp(1j * rng.uniform(0, 2 * np.pi))
            rotated = DoubleBellAmplitudes.from_array(phase * amps.as_array())
            for variant in (1, 2):
                assert robertson_check(rotated, variant).rhs == pytest.approx(
                    robertson_check(amps, variant).rhs, abs=1e-12
                )

    def test_variant_validation(self):
        with pytest.raises(ValueError):
            robertson_check(ucm_qubit(), 3)


class TestEntropicCheck:
    def test_ucm_sum(self):
        from qcloning.hcm import ucm_ndim

        report = entropic_check(*channel_pair(ucm_ndim(2)))
        assert report.lhs == pytest.approx(2 * (2 - math.log2(3) / 2), abs=1e-12)
        assert report.rhs == 2.0
        assert report.satisfied

    @pytest.mark.parametrize("dim", [2, 3, 5])
    def test_delta_grid_saturates(self, dim):
        report = entropic_check(*channel_pair(delta_grid(dim)))
        assert report.lhs == pytest.approx(report.rhs, abs=1e-12)
        assert report.satisfied

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_random_machines(self, dim):
        # these are theorems; any violation is a bug in the transform
        rng = np.random.default_rng(dim)
        for _ in range(1000):
            grid = random_grid(dim, rng)
            assert entropic_check(*channel_pair(grid)).satisfied
            first, second = marginal_entropic_check(grid)
            assert first.satisfied and second.satisfied

    def test_relabeling_invariance(self):
        # flipping (m, n) -> (N-m, N-n) on both grids permutes both
        # distributions, leaving the entropy sum unchanged
        rng = np.random.default_rng(13)
        for dim in (2, 3, 4):
            grid = random_grid(dim, rng)
            p, q = channel_pair(grid)
            rows = (-np.arange(dim)) % dim
            relabeled_p = ChannelDistribution(dim, p.probs[np.ix_(rows, rows)])
            relabeled_q = ChannelDistribution(dim, q.probs[np.ix_(rows, rows)])
            assert entropic_check(relabeled_p, relabeled_q).lhs == pytest.approx(
                entropic_check(p, q).lhs, abs=1e-12
            )

    def test_dimension_mismatch(self):
        p = ChannelDistribution(2, np.full((2, 2), 0.25))
        q = ChannelDistribution(3, np.full((3, 3), 1 / 9))
        with pytest.raises(ValueError):
            entropic_check(p, q)


class TestMarginalChecks:
    def test_ucm_marginals(self):
        from qcloning.hcm import ucm_ndim

        first, second = marginal_entropic_check(ucm_ndim(2))
        for report in (first, second):
            assert report.lhs == pytest.approx(1.30, abs=1e-2)
            assert report.rhs == 1.0
            assert report.satisfied
            assert report.slack > 0.0  # not saturated

    @pytest.mark.parametrize("dim", [2, 3, 5])
    def test_delta_grid_saturates(self, dim):
        first, second = marginal_entropic_check(delta_grid(dim))
        for report in (first, second):
            assert report.lhs == pytest.approx(report.rhs, abs=1e-12)

    def test_random_machines(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            first, second = marginal_entropic_check(random_grid(4, rng))
            assert first.satisfied and second.satisfied
