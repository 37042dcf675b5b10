import io
import math

import numpy as np
import pytest

from soesn import (
    Reservoir,
    StateTrajectory,
    classify_trajectory,
    init_state,
    scale_to_spectral_radius,
)
from soesn.errors import DimensionError, InputError, NumericError
from soesn.topology import build_dense


class FakeRng:
    """Stub generator: first draw is all zeros, then it delegates."""

    def __init__(self, seed=0):
        self.calls = 0
        self.real = np.random.default_rng(seed)

    def uniform(self, low, high, size):
        self.calls += 1
        if self.calls == 1:
            return np.zeros(size)
        return self.real.uniform(low, high, size=size)


class TestInitState:
    def test_deterministic(self):
        assert np.array_equal(init_state(5, seed=42), init_state(5, seed=42))

    def test_uniform_bounds_and_mean(self):
        state = init_state(1000, seed=3)
        assert state.min() >= -0.5 and state.max() <= 0.5
        assert -0.05 <= state.mean() <= 0.05

    def test_zero_units_rejected(self):
        with pytest.raises(InputError):
            init_state(0, seed=1)

    def test_all_zero_draw_is_redrawn(self):
        fake = FakeRng()
        state = init_state(3, rng=fake)
        assert fake.calls == 2
        assert np.max(np.abs(state)) >= 1e-6


def two_unit_reservoir(leak=0.5, state=(0.3, -0.2)):
    W = scale_to_spectral_radius(np.array([[1.0, 1.0], [-1.0, 1.0]]), 1.25)
    return Reservoir(W, leak, np.array(state))


class TestStep:
    def test_leak_half_no_weights(self):
        r = Reservoir(np.zeros((1, 1)), 0.5, np.array([1.0]))
        r.step()
        assert r.state[0] == pytest.approx(0.5, abs=1e-15)

    def test_full_leak_erases_state(self):
        r = Reservoir(np.zeros((1, 1)), 1.0, np.array([0.8]))
        r.step()
        assert r.state[0] == 0.0

    def test_scalar_arithmetic_oracle(self):
        # hand-rolled elementwise evaluation of the update rule
        r = two_unit_reservoir()
        s = 1.25 / math.sqrt(2.0)
        expected0 = 0.5 * 0.3 + 0.5 * math.tanh(s * 0.3 + s * (-0.2))
        expected1 = 0.5 * (-0.2) + 0.5 * math.tanh(-s * 0.3 + s * (-0.2))
        r.step()
        assert r.state[0] == pytest.approx(expected0, abs=1e-15)
        assert r.state[1] == pytest.approx(expected1, abs=1e-15)

    def test_weights_and_leak_untouched(self):
        r = two_unit_reservoir()
        W_before, leak_before = r.W.copy(), r.leak.copy()
        r.step()
        assert np.array_equal(r.W, W_before)
        assert np.array_equal(r.leak, leak_before)
        assert r.step_count == 1

    def test_non_finite_names_unit(self):
        r = two_unit_reservoir()
        r.W = r.W.copy()
        r.W[1, 0] = np.nan
        with pytest.raises(NumericError, match="unit 1"):
            r.step()

    def test_leak_one_reduces_to_tanh(self, rng):
        W = rng.uniform(-0.5, 0.5, (20, 20))
        state = rng.uniform(-0.5, 0.5, 20)
        r = Reservoir(W, 1.0, state)
        r.step()
        assert np.array_equal(r.state, np.tanh(W @ state))


class TestConstruction:
    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            Reservoir(np.ones((2, 3)), 0.5, np.zeros(2))

    def test_rejects_out_of_range_leak(self):
        with pytest.raises(InputError):
            Reservoir(np.zeros((2, 2)), 1.5, np.zeros(2))
        with pytest.raises(InputError):
            Reservoir(np.zeros((2, 2)), np.array([0.5, 0.0]), np.zeros(2))

    def test_rejects_state_outside_unit_interval(self):
        with pytest.raises(InputError):
            Reservoir(np.zeros((2, 2)), 0.5, np.array([1.5, 0.0]))

    def test_scalar_leak_broadcasts(self):
        r = Reservoir(np.zeros((3, 3)), 0.25, np.zeros(3))
        assert np.array_equal(r.leak, np.full(3, 0.25))


class TestRun:
    def test_single_step_matches_manual(self):
        r1, r2 = two_unit_reservoir(), two_unit_reservoir()
        trajectory = r1.run(1)
        r2.step()
        assert trajectory.steps == 2
        assert np.array_equal(trajectory.rows[1], r2.state)

    def test_run_composition(self):
        r1, r2 = two_unit_reservoir(), two_unit_reservoir()
        full = r1.run(100)
        first = r2.run(60)
        second = r2.run(40)
        assert np.array_equal(full.rows[:61], first.rows)
        assert np.array_equal(full.rows[60:], second.rows)

    def test_damped_reservoir_settles(self):
        W = scale_to_spectral_radius(build_dense(100, seed=5), 0.5)
        r = Reservoir(W, 0.5, init_state(100, seed=6))
        trajectory = r.run(1000)
        tail = trajectory.rows[-100:]
        assert np.all(tail.std(axis=0) < 1e-4)
        assert not classify_trajectory(trajectory).reservoir_is_self_oscillatory

    def test_tau_zero_rejected(self):
        with pytest.raises(InputError):
            two_unit_reservoir().run(0)

    def test_run_reports_failing_timestep(self):
        r = two_unit_reservoir()
        r.W = r.W.copy()
        r.W[0, 0] = np.nan
        with pytest.raises(NumericError, match="step 1"):
            r.run(5)

    def test_determinism_bit_exact(self):
        t1 = two_unit_reservoir().run(500)
        t2 = two_unit_reservoir().run(500)
        assert np.array_equal(t1.rows, t2.rows)

    def test_state_boundedness(self, rng):
        for rho in (0.5, 1.25, 2.5):
            W = scale_to_spectral_radius(rng.uniform(-0.5, 0.5, (50, 50)), rho)
            trajectory = Reservoir(W, 0.7, init_state(50, seed=9)).run(300)
            assert np.max(np.abs(trajectory.rows)) <= 1.0

    def test_washout_frequency_invariance(self):
        # fixed self-oscillatory reservoir, two unrelated initial states:
        # every oscillating unit keeps its dominant bin within one
        W = scale_to_spectral_radius(build_dense(100, seed=0), 1.25)
        reports = []
        for seed in (21, 22):
            trajectory = Reservoir(W, 0.5, init_state(100, seed=seed)).run(1000)
            reports.append(classify_trajectory(trajectory))
        assert all(r.reservoir_is_self_oscillatory for r in reports)
        for u1, u2 in zip(reports[0].per_unit, reports[1].per_unit):
            if u1.is_oscillating and u2.is_oscillating:
                assert abs(u1.dominant_bin - u2.dominant_bin) <= 1


class TestTrajectoryCsv:
    def test_round_trip_exact(self, rng):
        trajectory = two_unit_reservoir().run(50)
        buffer = io.StringIO()
        trajectory.write_csv(buffer)
        restored = StateTrajectory.read_csv(buffer.getvalue())
        assert np.array_equal(restored.rows, trajectory.rows)

    def test_header_format(self):
        trajectory = two_unit_reservoir().run(3)
        buffer = io.StringIO()
        trajectory.write_csv(buffer)
        lines = buffer.getvalue().splitlines()
        assert lines[0] == "t,x0,x1"
        assert len(lines) == 5
        assert lines[1].split(",")[0] == "0"

    def test_bad_header_rejected(self):
        with pytest.raises(InputError):
            StateTrajectory.read_csv("a,b\n1,2\n")

    def test_rows_immutable(self):
        trajectory = two_unit_reservoir().run(5)
        with pytest.raises(ValueError):
            trajectory.rows[0, 0] = 9.9
