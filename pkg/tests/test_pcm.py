import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcloning.channels import apply_channel, depolarizing_fraction
from qcloning.hcm import build_four_partite, grid_from_qubit_amplitudes, output_channels
from qcloning.linalg import ProbDist, StateVector, partial_trace, random_state, shannon_entropy
from qcloning.mestates import me_decompose
from qcloning.pcm import (
    DoubleBellAmplitudes,
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

INV_SQRT12 = 1.0 / math.sqrt(12.0)


def brute_force_weights(amps, keep):
    psi = build_four_partite(grid_from_qubit_amplitudes(amps))
    return me_decompose(partial_trace(psi, keep)).grid().ravel()


def sample_symmetric_points(count, rng, rc_variant=False):
    points = []
    while len(points) < count:
        theta = rng.uniform(0.0, 0.7)
        phi = rng.uniform(0.0, 2.0 * np.pi)
        try:
            points.append(symmetric_pcm(theta, phi, rc_variant=rc_variant))
        except ValueError:
            continue
    return points


class TestRepartition:
    def test_perfect_first_output_means_noisy_second(self):
        amps = DoubleBellAmplitudes(1.0, 0.0, 0.0, 0.0)
        moved = repartition(amps, "RB_AC")
        np.testing.assert_allclose(moved.as_array(), [0.5, 0.5, 0.5, 0.5], atol=1e-15)

    def test_ucm_is_fixed_under_clone_swap(self):
        ucm = ucm_qubit()
        moved = repartition(ucm, "RB_AC")
        np.testing.assert_allclose(moved.as_array(), ucm.as_array(), atol=1e-12)

    def test_ucm_ancilla_pairing(self):
        moved = repartition(ucm_qubit(), "RC_AB")
        expected = [1 / math.sqrt(3)] * 3 + [0.0]
        np.testing.assert_allclose(moved.as_array(), expected, atol=1e-12)

    def test_unknown_partition(self):
        with pytest.raises(ValueError, match="partition"):
            repartition(ucm_qubit(), "RA_BC")

    @pytest.mark.parametrize("partition,keep", [("RB_AC", (0, 2)), ("RC_AB", (0, 3))])
    def test_matches_brute_force_traces(self, partition, keep):
        rng = np.random.default_rng(71)
        for _ in range(40):
            amps = random_amplitudes(rng)
            moved = repartition(amps, partition)
            predicted = np.abs(moved.as_array()) ** 2
            np.testing.assert_allclose(
                predicted, brute_force_weights(amps, keep), atol=1e-9
            )

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(
            st.floats(min_value=-1.0, max_value=1.0, allow_nan=False),
            min_size=8,
            max_size=8,
        )
    )
    def test_norm_preserving_and_involutive(self, raw):
        vec = np.array(raw[:4]) + 1j * np.array(raw[4:])
        norm = np.linalg.norm(vec)
        if norm < 1e-3:
            return
        amps = DoubleBellAmplitudes.from_array(vec / norm)
        for partition in ("RB_AC", "RC_AB"):
            moved = repartition(amps, partition)
            assert np.linalg.norm(moved.as_array()) == pytest.approx(1.0, abs=1e-12)
            back = repartition(moved, partition)
            np.testing.assert_allclose(back.as_array(), amps.as_array(), atol=1e-12)


class TestEigenCheck:
    def test_report_residuals(self):
        report = repartition_matrix_eigencheck()
        assert report.involution_residual < 1e-12
        assert report.eigenvalue_one_residual < 1e-12
        assert report.eigenvalue_minus_one_residual < 1e-12
        assert report.ok

    def test_eigenspace_member_is_fixed(self):
        # (1, 1, 0, 0)/sqrt(2) satisfies v = x + y + z, so it is untouched
        amps = DoubleBellAmplitudes(1 / math.sqrt(2), 1 / math.sqrt(2), 0.0, 0.0)
        moved = repartition(amps, "RB_AC")
        np.testing.assert_allclose(moved.as_array(), amps.as_array(), atol=1e-12)

    def test_negated_eigenvector(self):
        amps = DoubleBellAmplitudes(-0.5, 0.5, 0.5, 0.5)
        moved = repartition(amps, "RB_AC")
        np.testing.assert_allclose(moved.as_array(), -amps.as_array(), atol=1e-12)


class TestIsotropicFromX:
    def test_ucm_point(self):
        x_prime, amps = isotropic_pcm_from_x(INV_SQRT12)
        assert x_prime == pytest.approx(INV_SQRT12, abs=1e-12)
        np.testing.assert_allclose(amps.as_array(), ucm_qubit().as_array(), atol=1e-12)

    def test_axis_crossings(self):
        assert isotropic_pcm_from_x(0.5)[0] == pytest.approx(0.0, abs=1e-12)
        assert isotropic_pcm_from_x(0.0)[0] == pytest.approx(0.5, abs=1e-12)

    def test_range_guard(self):
        with pytest.raises(ValueError):
            isotropic_pcm_from_x(0.6)

    def test_family_saturates_ellipse_and_is_isotropic(self):
        for x in np.linspace(0.0, 0.5, 50):
            x_prime, amps = isotropic_pcm_from_x(float(x))
            assert x * x + x * x_prime + x_prime * x_prime == pytest.approx(0.25, abs=1e-12)
            out = output_channels(grid_from_qubit_amplitudes(amps))
            # depolarizing_fraction raises if either simulated output is anisotropic
            assert depolarizing_fraction(out.a).pi == pytest.approx(4 * x * x, abs=1e-9)
            assert depolarizing_fraction(out.b).pi == pytest.approx(
                4 * x_prime * x_prime, abs=1e-9
            )

    def test_phase_moves_off_the_saturated_ellipse(self):
        x = 0.3
        x_sat, _ = isotropic_pcm_from_x(x)
        x_rot, amps = isotropic_pcm_from_x(x, phase=np.pi / 2)
        assert x_rot > x_sat
        out = output_channels(grid_from_qubit_amplitudes(amps))
        assert depolarizing_fraction(out.b).pi == pytest.approx(4 * x_rot**2, abs=1e-9)


class TestIsotropicAB:
    def test_symmetric_point(self):
        iso = isotropic_pcm_ab(1 / math.sqrt(3))
        assert iso.b == pytest.approx(1 / math.sqrt(3), abs=1e-12)
        assert iso.pi_a == pytest.approx(1 / 3, abs=1e-12)
        assert iso.pi_b == pytest.approx(1 / 3, abs=1e-12)

    def test_axis_crossing(self):
        iso = isotropic_pcm_ab(0.0)
        assert iso.b == pytest.approx(1.0, abs=1e-12)

    def test_relation_to_x_parametrization(self):
        a = 1 / math.sqrt(3)
        iso = isotropic_pcm_ab(a)
        x_prime, amps = isotropic_pcm_from_x(a / 2)
        np.testing.assert_allclose(
            iso.amplitudes().as_array(), amps.as_array(), atol=1e-12
        )
        assert x_prime == pytest.approx(iso.b / 2, abs=1e-12)

    def test_eigen_coordinates(self):
        iso = isotropic_pcm_ab(0.4)
        assert iso.a == pytest.approx(2 * (iso.c + iso.d), abs=1e-12)
        assert iso.b == pytest.approx(2 * (iso.c - iso.d), abs=1e-12)
        assert 12 * iso.c**2 + 4 * iso.d**2 == pytest.approx(1.0, abs=1e-12)


class TestSymmetricPCM:
    def test_pole_is_the_universal_machine(self):
        point = symmetric_pcm(0.0, 0.0)
        for coord in (point.x, point.y, point.z):
            assert coord == pytest.approx(INV_SQRT12, abs=1e-12)
        np.testing.assert_allclose(
            point.amplitudes().as_array(), ucm_qubit().as_array(), atol=1e-12
        )

    def test_surface_constraint_along_phi_zero(self):
        for theta in np.linspace(0.0, 0.3, 10):
            point = symmetric_pcm(float(theta), 0.0)
            form = (
                point.x**2 + point.y**2 + point.z**2
                + point.x * point.y + point.x * point.z + point.y * point.z
            )
            assert form == pytest.approx(0.5, abs=1e-12)

    def test_leaving_first_octant_rejected(self):
        with pytest.raises(ValueError, match="octant"):
            symmetric_pcm(0.7, 0.0)

    def test_clone_channels_agree_with_brute_force(self):
        rng = np.random.default_rng(73)
        for point in sample_symmetric_points(10, rng):
            psi = build_four_partite(grid_from_qubit_amplitudes(point.amplitudes()))
            rho_ra = partial_trace(psi, (0, 1))
            rho_rb = partial_trace(psi, (0, 2))
            assert np.linalg.norm(rho_ra.mat - rho_rb.mat) < 1e-9

    def test_repartition_magnitudes_fixed_across_family(self):
        rng = np.random.default_rng(74)
        for point in sample_symmetric_points(50, rng):
            amps = point.amplitudes().as_array()
            moved = repartition(point.amplitudes(), "RB_AC").as_array()
            np.testing.assert_allclose(np.abs(moved), np.abs(amps), atol=1e-12)

    def test_rc_variant_duplicates_clone_and_ancilla(self):
        rng = np.random.default_rng(75)
        for point in sample_symmetric_points(10, rng, rc_variant=True):
            assert point.amplitudes().y.real <= 0.0
            psi = build_four_partite(grid_from_qubit_amplitudes(point.amplitudes()))
            rho_ra = partial_trace(psi, (0, 1))
            rho_rc = partial_trace(psi, (0, 3))
            assert np.linalg.norm(rho_ra.mat - rho_rc.mat) < 1e-9


class TestUCMQubit:
    def test_amplitudes(self):
        expected = [math.sqrt(3 / 4), INV_SQRT12, INV_SQRT12, INV_SQRT12]
        np.testing.assert_allclose(ucm_qubit().as_array(), expected, atol=1e-15)

    def test_both_outputs_depolarizing_one_third(self):
        out = output_channels(grid_from_qubit_amplitudes(ucm_qubit()))
        assert depolarizing_fraction(out.a).pi == pytest.approx(1 / 3, abs=1e-9)
        assert depolarizing_fraction(out.b).pi == pytest.approx(1 / 3, abs=1e-9)

    def test_third_output_channel_weights(self):
        out = output_channels(grid_from_qubit_amplitudes(ucm_qubit()))
        np.testing.assert_allclose(
            out.c.grid(), [[1 / 3, 1 / 3], [1 / 3, 0.0]], atol=1e-9
        )
        assert out.c.residual < 1e-9

    def test_third_output_conjugates_the_input(self):
        from qcloning.channels import ChannelDistribution

        rng = np.random.default_rng(77)
        out = output_channels(grid_from_qubit_amplitudes(ucm_qubit()))
        channel_c = ChannelDistribution(2, out.c.grid())
        for _ in range(10):
            psi = random_state(2, rng)
            conj = np.outer(psi.amps.conj(), psi.amps)
            expected = conj / 3 + np.eye(2) / 3
            np.testing.assert_allclose(
                apply_channel(channel_c, psi.projector()).mat, expected, atol=1e-9
            )

    def test_entropy_of_clone_pair_is_maximal_over_family(self):
        rng = np.random.default_rng(78)
        ucm_entropy = math.log2(3)
        for point in sample_symmetric_points(50, rng):
            weights = np.abs(repartition(point.amplitudes(), "RC_AB").as_array()) ** 2
            assert shannon_entropy(ProbDist(weights)) <= ucm_entropy + 1e-12


class TestUCMUnitary:
    def test_fidelity_on_basis_and_superposition(self):
        for amps in ([1.0, 0.0], [1 / math.sqrt(2), 1 / math.sqrt(2)]):
            psi = StateVector((2,), amps)
            out = ucm_unitary_apply(psi)
            for clone in (0, 1):
                rho = partial_trace(out, {clone})
                expected = (2 / 3) * psi.projector().mat + np.eye(2) / 6
                np.testing.assert_allclose(rho.mat, expected, atol=1e-12)

    def test_clone_reduction_for_random_inputs(self):
        rng = np.random.default_rng(79)
        for _ in range(20):
            psi = random_state(2, rng)
            out = ucm_unitary_apply(psi)
            expected = (2 / 3) * psi.projector().mat + np.eye(2) / 6
            np.testing.assert_allclose(partial_trace(out, {0}).mat, expected, atol=1e-12)
            np.testing.assert_allclose(partial_trace(out, {1}).mat, expected, atol=1e-12)

    def test_entangled_input_reproduces_four_qubit_state(self):
        four = np.zeros(16, dtype=complex)
        for r in (0, 1):
            basis = np.zeros(2, dtype=complex)
            basis[r] = 1.0
            image = ucm_unitary_apply(StateVector((2,), basis)).amps
            four += np.kron(basis, image) / math.sqrt(2)
        built = build_four_partite(grid_from_qubit_amplitudes(ucm_qubit())).amps
        np.testing.assert_allclose(four, built, atol=1e-12)


class TestTriplicator:
    def test_best_triplicator_amplitudes(self):
        amps = triplicator(1 / math.sqrt(6))
        expected = [2 / math.sqrt(6), 1 / math.sqrt(6), 1 / math.sqrt(6), 0.0]
        np.testing.assert_allclose(amps.as_array(), expected, atol=1e-12)

    def test_three_outputs_share_one_channel(self):
        for x in np.linspace(0.0, 1 / math.sqrt(2), 15):
            amps = triplicator(float(x))
            base = np.abs(amps.as_array())
            for partition in ("RB_AC", "RC_AB"):
                moved = repartition(amps, partition)
                np.testing.assert_allclose(np.abs(moved.as_array()), base, atol=1e-12)
                assert abs(moved.y) < 1e-12  # never a doubly antisymmetric part

    def test_best_triplicator_action(self):
        rng = np.random.default_rng(81)
        channel = triplicator(1 / math.sqrt(6)).channel()
        for _ in range(10):
            psi = random_state(2, rng)
            out = apply_channel(channel, psi.projector())
            conj = np.outer(psi.amps.conj(), psi.amps)
            expected = psi.projector().mat / 2 + conj / 6 + np.eye(2) / 6
            np.testing.assert_allclose(out.mat, expected, atol=1e-12)

    def test_real_inputs_reach_ucm_fidelity(self):
        from qcloning.channels import channel_fidelity

        rng = np.random.default_rng(82)
        channel = triplicator(1 / math.sqrt(6)).channel()
        for _ in range(20):
            raw = rng.normal(size=2)
            psi = StateVector((2,), raw / np.linalg.norm(raw))
            assert channel_fidelity(channel, psi) == pytest.approx(5 / 6, abs=1e-12)

    def test_range_guard(self):
        with pytest.raises(ValueError):
            triplicator(0.8)


class TestCapacityBound:
    def test_depolarizing_quarter_on_surface(self):
        result = capacity_upper_bound(1 / 12, 1 / 12, 1 / 12)
        assert result.bound == 0.0
        assert result.region == "on"

    def test_two_pauli_third_on_surface(self):
        result = capacity_upper_bound(1 / 6, 0.0, 1 / 6)
        assert result.bound == 0.0
        assert result.region == "on"

    def test_dephasing_half_on_surface(self):
        result = capacity_upper_bound(0.0, 0.0, 0.5)
        assert result.bound == 0.0
        assert result.region == "on"

    def test_perfect_channel(self):
        result = capacity_upper_bound(0.0, 0.0, 0.0)
        assert result.bound == 1.0
        assert result.region == "inside"

    def test_outside_clamps_to_zero(self):
        result = capacity_upper_bound(0.3, 0.3, 0.3)
        assert result.bound == 0.0
        assert result.region == "outside"

    def test_nonincreasing_along_rays(self):
        rng = np.random.default_rng(83)
        for _ in range(25):
            direction = rng.uniform(size=3)
            direction /= direction.sum()
            previous = 1.0
            for t in np.linspace(0.0, 1.0, 20):
                probs = (t**2) * direction
                bound = capacity_upper_bound(*probs).bound
                assert bound <= previous + 1e-12
                previous = bound

    def test_invalid_probabilities(self):
        with pytest.raises(ValueError):
            capacity_upper_bound(-0.1, 0.0, 0.0)
        with pytest.raises(ValueError):
            capacity_upper_bound(0.5, 0.5, 0.5)
