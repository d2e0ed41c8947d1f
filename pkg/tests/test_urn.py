"""Urn mechanism: literal simulation, exact enumeration, ensembles.

step_distribution_exact enumerates the mechanism's branches and is
deliberately independent of the recurrence-coefficient formulas; their
agreement (here sampled, in the acceptance suite exhaustive) is the
package's central cross-check.
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jacobi_walk import (
    CounterStream,
    ModelParams,
    estimate_transition,
    simulate_step,
    simulate_trajectory,
    spectral_transition,
    step_coefficients,
    step_distribution_exact,
    terminal_state_counts,
)

F = Fraction

params_strategy = st.tuples(st.integers(0, 8), st.integers(0, 8)).map(
    lambda ab: ModelParams(*ab)
)


class TestStepDistributionExact:
    def test_hand_enumeration_state_one(self):
        # hand: n=1, a=b=0: blue 1/3 -> aux (1 blue, 1 red); red 2/3 -> aux
        # (2 blue, 2 red); gives (down, stay, up) = (1/6, 1/2, 1/3)
        assert step_distribution_exact(1, ModelParams(0, 0)) == (F(1, 6), F(1, 2), F(1, 3))

    def test_hand_enumeration_origin(self):
        # hand: n=0, a=b=0: only the red branch; aux is (1 blue, 1 red)
        assert step_distribution_exact(0, ModelParams(0, 0)) == (F(0), F(1, 2), F(1, 2))

    @given(st.integers(0, 120), params_strategy)
    def test_matches_recurrence_coefficients(self, n, params):
        down, stay, up = step_distribution_exact(n, params)
        c = step_coefficients(n, params, "exact")
        assert (down, stay, up) == (c.down, c.stay, c.up)

    def test_rejects_fractional_params(self):
        with pytest.raises(ValueError):
            step_distribution_exact(1, ModelParams(0.5, 1))


class TestSimulateStep:
    @given(
        st.integers(0, 40),
        params_strategy,
        st.integers(0, 2**32),
        st.integers(0, 64),
    )
    def test_trace_invariants(self, n, params, seed, index):
        trace = simulate_step(n, params, CounterStream.from_seed(seed, index))
        assert trace.state_before == n
        assert trace.mixed_in == n + params.alpha + params.beta + 1
        assert trace.color_changed == (trace.chosen_color == trace.auxiliary_color)
        assert trace.state_after >= 0
        assert abs(trace.state_after - n) <= 1

    def test_origin_never_steps_down(self):
        params = ModelParams(0, 0)
        for seed in range(300):
            trace = simulate_step(0, params, CounterStream.from_seed(seed))
            assert trace.state_after in (0, 1)
            assert trace.chosen_color == "red"  # no blue ball to draw

    def test_exhausts_both_branches(self):
        params = ModelParams(1, 2)
        seen = set()
        for seed in range(200):
            trace = simulate_step(3, params, CounterStream.from_seed(seed))
            seen.add((trace.chosen_color, trace.auxiliary_color))
        assert len(seen) == 4  # all four (main, auxiliary) combinations occur

    def test_empirical_step_frequencies(self):
        # 60000 single steps from n=2, a=1, b=0, against the exact law
        params = ModelParams(1, 0)
        down, stay, up = (float(v) for v in step_distribution_exact(2, params))
        counts = {1: 0, 2: 0, 3: 0}
        total = 60000
        for k in range(total):
            counts[simulate_step(2, params, CounterStream.from_seed(314159, k)).state_after] += 1
        for state, expected in ((1, down), (2, stay), (3, up)):
            sigma = (expected * (1 - expected) / total) ** 0.5
            assert abs(counts[state] / total - expected) < 5 * sigma


class TestSimulateTrajectory:
    def test_zero_steps(self):
        assert simulate_trajectory(4, 0, ModelParams(0, 0), CounterStream.from_seed(1)) == [4]

    def test_birth_death_increments(self):
        path = simulate_trajectory(2, 200, ModelParams(2, 1), CounterStream.from_seed(8))
        assert len(path) == 201
        assert path[0] == 2
        assert all(s >= 0 for s in path)
        assert all(abs(b - a) <= 1 for a, b in zip(path, path[1:]))

    def test_deterministic_replay(self):
        params = ModelParams(0, 0)
        first = simulate_trajectory(0, 10, params, CounterStream.from_seed(5, 17))
        second = simulate_trajectory(0, 10, params, CounterStream.from_seed(5, 17))
        assert first == second


class TestEnsembles:
    def test_vectorized_matches_per_trajectory_scalar(self):
        # the vectorized ensemble must reproduce, count for count, what the
        # scalar mechanism produces trajectory by trajectory on the same
        # substreams -- this is what makes chunking/threading irrelevant
        n0, t, seed, total = 2, 7, 424242, 300
        params = ModelParams(1, 2)
        scalar_counts = np.zeros(n0 + t + 1, dtype=np.int64)
        for k in range(total):
            path = simulate_trajectory(n0, t, params, CounterStream.from_seed(seed, k))
            scalar_counts[path[-1]] += 1
        vector_counts = terminal_state_counts(n0, t, params, total, seed)
        assert np.array_equal(scalar_counts, vector_counts)

    def test_thread_count_does_not_change_counts(self):
        params = ModelParams(2, 0)
        base = terminal_state_counts(1, 4, params, 600000, 31337, threads=1)
        threaded = terminal_state_counts(1, 4, params, 600000, 31337, threads=4)
        assert np.array_equal(base, threaded)

    def test_counts_cover_all_trajectories(self):
        counts = terminal_state_counts(0, 3, ModelParams(0, 1), 5000, 9)
        assert counts.sum() == 5000
        assert counts.size == 4

    def test_coefficient_sampler_statistically_consistent(self):
        # labeled fast path: same law, different draws; compare to the
        # closed form at 5 sigma
        params = ModelParams(1, 1)
        total = 200000
        counts = terminal_state_counts(0, 2, params, total, 2718, sampler="coefficients")
        for j in range(3):
            p = spectral_transition(2, 0, j, params, "float")
            sigma = (p * (1 - p) / total) ** 0.5
            assert abs(counts[j] / total - p) < 5 * sigma

    def test_sampler_name_validated(self):
        with pytest.raises(ValueError):
            terminal_state_counts(0, 1, ModelParams(0, 0), 10, 1, sampler="magic")


class TestEstimateTransition:
    def test_against_one_step_law(self):
        # hand target: up_0 = 1/2 for a=b=0
        est = estimate_transition(0, 1, 1, ModelParams(0, 0), 10**6, seed=20240816)
        assert est.trajectories == 10**6
        assert est.standard_error == pytest.approx(
            (est.estimate * (1 - est.estimate) / 10**6) ** 0.5
        )
        assert abs(est.estimate - 0.5) < 4 * est.standard_error

    def test_against_two_step_hand_value(self):
        est = estimate_transition(0, 2, 0, ModelParams(0, 0), 10**6, seed=7)
        assert abs(est.estimate - 1.0 / 3.0) < 4 * est.standard_error

    def test_unreachable_state(self):
        est = estimate_transition(0, 3, 5, ModelParams(0, 0), 2000, seed=3)
        assert est.estimate == 0.0
        assert est.standard_error == 0.0

    def test_threads_do_not_change_estimate(self):
        one = estimate_transition(1, 3, 2, ModelParams(1, 1), 400000, seed=55, threads=1)
        four = estimate_transition(1, 3, 2, ModelParams(1, 1), 400000, seed=55, threads=4)
        assert one == four
