import numpy as np
import pytest

from qcharid import (
    CapacityError,
    DomainError,
    StateVector,
    fidelity,
    prepare_product,
    prob_zero,
    rank1_phase,
    sample_marginals,
)
from qcharid.simcore import uniform_stream


def random_state(rng, n):
    amps = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return StateVector(amps / np.linalg.norm(amps))


class TestStateVector:
    def test_rejects_unnormalized(self):
        with pytest.raises(DomainError):
            StateVector([1.0, 1.0])

    def test_rejects_non_power_of_two(self):
        with pytest.raises(DomainError):
            StateVector([1.0, 0.0, 0.0])

    def test_capacity_cap(self):
        amps = np.zeros(2**17)
        amps[0] = 1.0
        with pytest.raises(CapacityError):
            StateVector(amps)

    def test_amplitudes_are_frozen(self):
        sv = StateVector([1.0, 0.0])
        with pytest.raises(ValueError):
            sv.amplitudes[0] = 0.0


class TestPrepareProduct:
    def test_white_pixel_is_zero_ket(self):
        sv = prepare_product([1.0])
        assert np.allclose(sv.amplitudes, [1, 0])

    def test_black_pixel_is_one_ket(self):
        sv = prepare_product([0.0])
        assert np.allclose(sv.amplitudes, [0, 1])

    def test_uniform_product(self):
        sv = prepare_product([0.5, 0.5])
        assert np.allclose(sv.amplitudes, [0.5, 0.5, 0.5, 0.5])

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            prepare_product([1.2])
        with pytest.raises(DomainError):
            prepare_product([-0.1])
        with pytest.raises(DomainError):
            prepare_product([])

    def test_capacity(self):
        with pytest.raises(CapacityError):
            prepare_product([0.5] * 17)

    def test_amplitudes_real_non_negative(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            sv = prepare_product(rng.uniform(0, 1, size=3))
            assert np.all(sv.amplitudes.imag == 0)
            assert np.all(sv.amplitudes.real >= 0)


class TestRank1Phase:
    def test_pi_phase_flip(self):
        zero = prepare_product([1.0])
        out = rank1_phase(zero, zero, np.pi)
        assert np.allclose(out.amplitudes, [-1, 0])

    def test_orthogonal_untouched(self):
        one = prepare_product([0.0])
        zero = prepare_product([1.0])
        out = rank1_phase(one, zero, np.pi / 3)
        assert np.allclose(out.amplitudes, one.amplitudes)

    def test_eigenphase(self):
        zero = prepare_product([1.0])
        out = rank1_phase(zero, zero, np.pi / 3)
        assert np.allclose(out.amplitudes, [np.exp(1j * np.pi / 3), 0])

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            rank1_phase(prepare_product([0.5]), prepare_product([0.5, 0.5]), 1.0)

    def test_norm_preserved_on_random_states(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            n = int(rng.integers(1, 4))
            state = random_state(rng, n)
            axis = random_state(rng, n)
            angle = rng.uniform(0, 2 * np.pi)
            out = rank1_phase(state, axis, angle)
            assert abs(np.linalg.norm(out.amplitudes) - 1.0) < 1e-10

    def test_pi_reflection_is_involution(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            state = random_state(rng, 2)
            axis = random_state(rng, 2)
            back = rank1_phase(rank1_phase(state, axis, np.pi), axis, np.pi)
            assert np.allclose(back.amplitudes, state.amplitudes, atol=1e-10)


class TestFidelity:
    def test_self(self):
        sv = prepare_product([0.3, 0.6])
        assert fidelity(sv, sv) == pytest.approx(1.0)

    def test_orthogonal(self):
        assert fidelity(prepare_product([1.0]), prepare_product([0.0])) == 0.0

    def test_half_overlap(self):
        assert fidelity(prepare_product([1.0]), prepare_product([0.5])) == pytest.approx(0.5)

    def test_symmetric_and_phase_invariant(self):
        rng = np.random.default_rng(3)
        a, b = random_state(rng, 2), random_state(rng, 2)
        assert fidelity(a, b) == pytest.approx(fidelity(b, a))
        rotated = StateVector(np.exp(1j * 0.9) * a.amplitudes)
        assert fidelity(rotated, b) == pytest.approx(fidelity(a, b))

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            fidelity(prepare_product([0.5]), prepare_product([0.5, 0.5]))


class TestProbZero:
    def test_encoding_definition(self):
        assert prob_zero(prepare_product([0.3]), 0) == pytest.approx(0.3)

    def test_second_qubit(self):
        assert prob_zero(prepare_product([1.0, 0.0]), 1) == pytest.approx(0.0)

    def test_product_marginals(self):
        assert prob_zero(prepare_product([0.25, 0.75]), 0) == pytest.approx(0.25)

    def test_encoding_round_trip_grid(self):
        for v in np.arange(0.0, 1.0 + 1e-12, 0.01):
            assert abs(prob_zero(prepare_product([v]), 0) - v) < 1e-12

    def test_index_out_of_range(self):
        with pytest.raises(DomainError):
            prob_zero(prepare_product([0.5]), 1)


class TestSampling:
    def test_deterministic_state_all_zeros(self):
        out = sample_marginals(prepare_product([1.0]), 256, 123)
        assert out.zero_frequencies == (1.0,)

    def test_deterministic_state_all_ones(self):
        out = sample_marginals(prepare_product([0.0]), 256, 123)
        assert out.zero_frequencies == (0.0,)

    def test_binomial_bound_seed_42(self):
        # 4 sigma for p=0.5, 256 shots: sigma = 1/32
        out = sample_marginals(prepare_product([0.5]), 256, 42)
        assert abs(out.zero_frequencies[0] - 0.5) <= 4 * 0.03125

    def test_frequency_over_many_seeds(self):
        # brute-force check that the frequency estimator is unbiased
        freqs = [
            sample_marginals(prepare_product([0.5]), 256, seed).zero_frequencies[0]
            for seed in range(200)
        ]
        assert abs(np.mean(freqs) - 0.5) < 4 * 0.03125 / np.sqrt(200)

    def test_zero_shots_rejected(self):
        with pytest.raises(DomainError):
            sample_marginals(prepare_product([0.5]), 0, 1)

    def test_repeatable(self):
        sv = prepare_product([0.3, 0.8])
        a = sample_marginals(sv, 512, 99)
        b = sample_marginals(sv, 512, 99)
        assert a == b

    def test_convergence_to_marginals(self):
        rng = np.random.default_rng(5)
        shots = 2**16
        for _ in range(5):
            values = rng.uniform(0, 1, size=3)
            sv = prepare_product(values)
            out = sample_marginals(sv, shots, int(rng.integers(0, 2**31)))
            for q in range(3):
                assert abs(out.zero_frequencies[q] - prob_zero(sv, q)) < 5 / np.sqrt(shots)

    def test_frequencies_are_shot_fractions(self):
        out = sample_marginals(prepare_product([0.4, 0.6]), 256, 17)
        for f in out.zero_frequencies:
            assert (f * 256) == int(f * 256)


class TestUniformStream:
    def test_deterministic_and_in_range(self):
        a = uniform_stream(123, 1000)
        b = uniform_stream(123, 1000)
        assert np.array_equal(a, b)
        assert np.all((a >= 0) & (a < 1))

    def test_seed_changes_stream(self):
        assert not np.array_equal(uniform_stream(1, 100), uniform_stream(2, 100))
