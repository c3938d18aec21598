import math

import numpy as np
import pytest

from headway_sim.geom import Vec2
from headway_sim.ode import SimConfig, integrate, rk4_step, simulate_to_goal
from headway_sim.properties import check_rk4_order
from headway_sim.unicycle import ControllerParams, UnicycleState, wrap_angle


class TestSimConfig:
    def test_validation(self):
        with pytest.raises(ValueError, match="step"):
            SimConfig(step=0.0)
        with pytest.raises(ValueError, match="max_time"):
            SimConfig(max_time=-1.0)
        with pytest.raises(ValueError, match="prediction_step"):
            SimConfig(prediction_step=0.0)

    def test_inner_step_defaults_to_step(self):
        assert SimConfig(step=0.01).inner_step() == 0.01
        assert SimConfig(step=0.01, prediction_step=0.05).inner_step() == 0.05


class TestIntegrate:
    def test_constant_input_is_exact(self):
        def f(y):
            return np.array([math.cos(y[2]), math.sin(y[2]), 0.0])

        t, states = integrate(f, np.array([0.0, 0.0, 0.0]),
                              SimConfig(step=0.01, max_time=1.0))
        assert t[-1] == pytest.approx(1.0, abs=1e-12)
        assert states[-1, 0] == pytest.approx(1.0, abs=1e-9)
        assert states[-1, 1] == pytest.approx(0.0, abs=1e-9)

    def test_pure_rotation_advances_angle(self):
        def f(y):
            return np.array([0.0, 0.0, 1.0])

        _, states = integrate(f, np.zeros(3), SimConfig(step=0.01, max_time=math.pi))
        theta = states[-1, 2]
        assert theta == pytest.approx(math.pi, abs=1e-9)
        assert abs(abs(wrap_angle(theta)) - math.pi) < 1e-9

    def test_final_partial_step_lands_on_horizon(self):
        def f(y):
            return np.array([1.0])

        t, states = integrate(f, np.zeros(1), SimConfig(step=0.3, max_time=1.0))
        assert t[-1] == pytest.approx(1.0, abs=1e-12)
        assert states[-1, 0] == pytest.approx(1.0, abs=1e-12)

    def test_stop_predicate(self):
        def f(y):
            return np.array([1.0])

        t, states = integrate(f, np.zeros(1), SimConfig(step=0.1, max_time=10.0),
                              stop=lambda y: y[0] >= 0.55)
        assert states[-1, 0] == pytest.approx(0.6, abs=1e-12)
        assert t[-1] == pytest.approx(0.6, abs=1e-12)

    def test_step_halving_changes_little_on_smooth_run(self):
        goal = Vec2(0.0, 0.0)
        params = ControllerParams(headway_coeff=0.5)

        def finals(step):
            traj = simulate_to_goal(UnicycleState(Vec2(-2.0, 0.7), 2.0), goal,
                                    params, step=step, max_time=2.0)
            return traj.states[-1]

        diff = np.linalg.norm(finals(0.01) - finals(0.005))
        assert diff < 1e-6

    def test_rk4_step_matches_integrate(self):
        def f(y):
            return np.array([y[0]])  # exponential growth

        y = np.array([1.0])
        for _ in range(10):
            y = rk4_step(f, y, 0.1)
        _, states = integrate(f, np.array([1.0]), SimConfig(step=0.1, max_time=1.0))
        assert y[0] == pytest.approx(states[-1, 0], rel=1e-15)
        assert y[0] == pytest.approx(math.e, rel=1e-5)


class TestSimulateToGoal:
    def test_converges_and_flags(self):
        traj = simulate_to_goal(UnicycleState(Vec2(1.5, -0.5), 0.3), Vec2(0, 0),
                                ControllerParams(), step=0.01)
        assert traj.converged
        assert np.hypot(*traj.positions[-1]) <= 1e-4

    def test_budget_exhaustion_flag(self):
        traj = simulate_to_goal(UnicycleState(Vec2(3.0, 0.0), 0.0), Vec2(0, 0),
                                ControllerParams(), step=0.01, max_time=0.05)
        assert not traj.converged

    def test_fourth_order_convergence(self):
        result = check_rk4_order()
        assert result.passed, result.detail
