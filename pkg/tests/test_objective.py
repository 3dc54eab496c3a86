import numpy as np
import pytest

from conftest import random_distribution
from cvarqopt import fixtures
from cvarqopt.hamiltonian import DiagonalHamiltonian
from cvarqopt.objective import (
    CvarConfig,
    OutcomeDistribution,
    best_support_bitstring,
    cvar_exact,
    cvar_from_samples,
    cvar_sampled,
    outcome_distribution,
    overlap_with_optimum,
    sample_outcomes,
)
from cvarqopt.statevector import StateVector, run_circuit

REF_H = fixtures.two_qubit_hamiltonian()


def ref_state(theta):
    return run_circuit(fixtures.two_qubit_circuit(theta))


@pytest.mark.parametrize("theta", [0.4, 1.1, 2.8])
def test_distribution_of_reference_state(theta):
    d = outcome_distribution(ref_state(theta), REF_H)
    c2, s2 = np.cos(theta / 2) ** 2, np.sin(theta / 2) ** 2
    np.testing.assert_array_equal(d.values, [0.0, 1.0, 2.0])
    np.testing.assert_allclose(d.probs, [c2 / 2, s2, c2 / 2], atol=1e-12)


def test_distribution_of_basis_state():
    d = outcome_distribution(StateVector.zero(2), DiagonalHamiltonian(2, [3.0, 1.0, 4.0, 1.0]))
    np.testing.assert_array_equal(d.values, [3.0])
    np.testing.assert_array_equal(d.probs, [1.0])


def test_distribution_of_uniform_state_counts_multiplicity():
    d = outcome_distribution(StateVector.uniform(2), REF_H)
    np.testing.assert_array_equal(d.values, [0.0, 1.0, 2.0])
    np.testing.assert_allclose(d.probs, [0.25, 0.5, 0.25], atol=1e-12)


@pytest.mark.parametrize("theta", np.linspace(0, 2 * np.pi, 17))
def test_mean_objective_is_constant_on_reference(theta):
    assert cvar_exact(outcome_distribution(ref_state(theta), REF_H), 1.0) == pytest.approx(
        1.0, abs=1e-12
    )


@pytest.mark.parametrize("theta", np.linspace(0, 2 * np.pi, 17))
def test_half_tail_objective_is_sine_squared(theta):
    got = cvar_exact(outcome_distribution(ref_state(theta), REF_H), 0.5)
    assert got == pytest.approx(np.sin(theta / 2) ** 2, abs=1e-12)


def test_small_alpha_hits_the_minimum(rng):
    for _ in range(50):
        d = random_distribution(rng)
        assert cvar_exact(d, d.probs[0]) == pytest.approx(d.values[0], abs=1e-12)
        assert cvar_exact(d, d.probs[0] / 3) == pytest.approx(d.values[0], abs=1e-12)


def test_alpha_one_is_the_mean(rng):
    for _ in range(100):
        d = random_distribution(rng)
        assert cvar_exact(d, 1.0) == pytest.approx(d.mean(), abs=1e-12)


def test_monotone_in_alpha(rng):
    alphas = np.linspace(0.01, 1.0, 40)
    for _ in range(20):
        d = random_distribution(rng)
        vals = [cvar_exact(d, a) for a in alphas]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_bounded_by_min_and_mean(rng):
    for _ in range(30):
        d = random_distribution(rng)
        for a in (0.05, 0.3, 0.77, 1.0):
            v = cvar_exact(d, a)
            assert d.values[0] - 1e-12 <= v <= d.mean() + 1e-12


def test_boundary_outcome_taken_fractionally():
    d = OutcomeDistribution([0.0, 10.0], [0.25, 0.75])
    # tail of 0.5: all of the 0-outcome plus half of the rest
    assert cvar_exact(d, 0.5) == pytest.approx((0.25 * 0 + 0.25 * 10) / 0.5, abs=1e-12)


def test_continuity_in_alpha():
    d = OutcomeDistribution([-3.0, 2.0, 9.0], [0.2, 0.5, 0.3])
    eps = 1e-9
    for a in (0.2, 0.7):
        below, above = cvar_exact(d, a - eps), cvar_exact(d, a + eps)
        assert abs(above - below) < 1e-6


def test_no_reward_for_ground_mass_beyond_alpha():
    alpha = 0.01
    lean = OutcomeDistribution([0.0, 5.0], [0.02, 0.98])
    fat = OutcomeDistribution([0.0, 5.0], [0.60, 0.40])
    assert cvar_exact(lean, alpha) == cvar_exact(fat, alpha) == 0.0


def test_sampled_alpha_one_is_sample_mean(rng):
    state = ref_state(0.9)
    rng_a = np.random.Generator(np.random.PCG64(5))
    _, values = sample_outcomes(state, REF_H, 400, rng_a)
    got = cvar_sampled(state, REF_H, CvarConfig(1.0, "sampled", shots=400, seed=5))
    assert got == pytest.approx(values.mean(), abs=1e-12)


def test_single_shot_returns_single_sample():
    state = ref_state(1.2)
    for alpha in (0.01, 0.4, 1.0):
        v = cvar_sampled(state, REF_H, CvarConfig(alpha, "sampled", shots=1, seed=11))
        assert v in (0.0, 1.0, 2.0)


def test_deterministic_state_samples_exactly():
    ham = DiagonalHamiltonian(2, [7.0, 1.0, 3.0, 5.0])
    amps = np.zeros(4, dtype=complex)
    amps[2] = 1.0
    state = StateVector(2, amps)
    for alpha in (0.05, 0.5, 1.0):
        assert cvar_sampled(state, ham, CvarConfig(alpha, "sampled", shots=64, seed=0)) == 3.0


def test_sampled_is_deterministic_given_seed():
    state = ref_state(0.7)
    cfg = CvarConfig(0.3, "sampled", shots=512, seed=42)
    assert cvar_sampled(state, REF_H, cfg) == cvar_sampled(state, REF_H, cfg)


def test_sampled_mean_tracks_exact_within_three_standard_errors():
    state = ref_state(1.9)
    d = outcome_distribution(state, REF_H)
    for alpha in (0.1, 0.5, 1.0):
        exact = cvar_exact(d, alpha)
        draws = np.array(
            [
                cvar_sampled(state, REF_H, CvarConfig(alpha, "sampled", shots=8192, seed=s))
                for s in range(100)
            ]
        )
        se = draws.std(ddof=1) / 10.0
        assert abs(draws.mean() - exact) <= 3.0 * se + 1e-9


def test_overlap_on_pure_minimizer():
    ham = DiagonalHamiltonian(2, [4.0, 0.5, 2.0, 3.0])
    amps = np.zeros(4, dtype=complex)
    amps[1] = 1.0
    assert overlap_with_optimum(StateVector(2, amps), ham) == 1.0


def test_overlap_of_uniform_state_with_unique_minimizer():
    ham = DiagonalHamiltonian(3, np.arange(8.0))
    assert overlap_with_optimum(StateVector.uniform(3), ham) == pytest.approx(1 / 8, abs=1e-12)


def test_overlap_reference_at_zero():
    assert overlap_with_optimum(ref_state(0.0), REF_H) == pytest.approx(0.5, abs=1e-12)


def test_degenerate_minima_all_count():
    ham = DiagonalHamiltonian(2, [1.0, 0.0, 0.0, 2.0])
    assert overlap_with_optimum(StateVector.uniform(2), ham) == pytest.approx(0.5, abs=1e-12)


def test_best_support_bitstring_ignores_zero_amplitudes():
    ham = DiagonalHamiltonian(2, [0.0, 1.0, 1.0, 2.0])
    amps = np.array([0.0, 1.0, 1.0, 0.0], dtype=complex) / np.sqrt(2)
    j, val = best_support_bitstring(StateVector(2, amps), ham)
    assert (j, val) == (1, 1.0)


def test_validation_errors():
    d = OutcomeDistribution([1.0], [1.0])
    with pytest.raises(ValueError):
        cvar_exact(d, 0.0)
    with pytest.raises(ValueError):
        cvar_exact(d, 1.5)
    with pytest.raises(ValueError):
        CvarConfig(0.5, "sampled", shots=0)
    with pytest.raises(ValueError):
        cvar_from_samples(np.array([]), 0.5)
    with pytest.raises(ValueError):
        OutcomeDistribution([1.0, 1.0], [0.5, 0.5])  # not strictly increasing
    with pytest.raises(ValueError):
        outcome_distribution(StateVector.zero(2), DiagonalHamiltonian(3, np.zeros(8)))
