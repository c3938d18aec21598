"""Acceptance gate: every shipped guarantee at its stated tolerance.

Each test prints one PASS/FAIL line per criterion (run with ``pytest -s``
to see them live).  The expensive shared artifacts (200 integrated
trajectories, the 5-scenario episode grid) are computed once per module.
"""

import time
from pathlib import Path

import numpy as np
import pytest

from headway_sim.properties import (
    check_aligned_forward_motion,
    check_alignment_monotone,
    check_branch_continuity,
    check_distance_order,
    check_fixed_headway_offset,
    check_goal_point_equivalence,
    check_nonholonomic_exact,
    check_position_bracket,
    check_rk4_order,
    check_trajectory_containment,
    check_positive_inclusion,
    check_radius_decay,
    sample_trajectory_cases,
)
from headway_sim.scenario import load_scenario
from headway_sim.simulation import METHODS, run_episode

ACC_SEED = 2024
SCENARIO_DIR = Path(__file__).resolve().parents[1] / "scenarios"
SHIPPED = ("office", "corridor", "open", "slalom", "uturn")


def _report(criterion: str, passed: bool, detail: str) -> bool:
    print(f"{'PASS' if passed else 'FAIL'}  criterion {criterion}: {detail}")
    return passed


@pytest.fixture(scope="module")
def trajectory_cases():
    t0 = time.perf_counter()
    cases = sample_trajectory_cases(ACC_SEED, 200)
    return cases, time.perf_counter() - t0


@pytest.fixture(scope="module")
def episode_grid():
    """All shipped scenarios times all prediction methods, at scenario defaults."""
    results = {}
    t0 = time.perf_counter()
    for name in SHIPPED:
        scenario = load_scenario(SCENARIO_DIR / f"{name}.yaml")
        for method in METHODS:
            results[(name, method)] = run_episode(
                scenario.environment, scenario.path, scenario.controller,
                method, scenario.sim, scenario.initial_theta)
    return results, time.perf_counter() - t0


@pytest.fixture(scope="module")
def office_eps_sweep(episode_grid):
    """Office runs at the higher headway coefficient for the epsilon ordering."""
    grid, _ = episode_grid
    scenario = load_scenario(SCENARIO_DIR / "office.yaml")
    high = scenario.with_overrides(epsilon=0.75)
    sweep = {(0.5, m): grid[("office", m)] for m in METHODS}
    for method in METHODS:
        sweep[(0.75, method)] = run_episode(
            high.environment, high.path, high.controller, method, high.sim,
            high.initial_theta)
    return sweep


def test_criterion_1_headway_frame_and_motion_properties(trajectory_cases):
    cases, gen_seconds = trajectory_cases
    t0 = time.perf_counter()
    results = [
        check_goal_point_equivalence(ACC_SEED, 10_000),
        check_position_bracket(ACC_SEED, 10_000, tol=1e-9),
        check_distance_order(ACC_SEED, 10_000, rel_tol=1e-12),
        check_alignment_monotone(cases, tol=1e-6),
        check_aligned_forward_motion(cases),
    ]
    elapsed = time.perf_counter() - t0 + gen_seconds
    ok = all(r.passed for r in results) and elapsed < 30.0
    detail = "; ".join(r.detail for r in results)
    assert _report("1 frame/motion properties", ok, f"{detail} [{elapsed:.1f}s of 30s budget]")


def test_criterion_2_prediction_containment(trajectory_cases):
    cases, _ = trajectory_cases
    t0 = time.perf_counter()
    result = check_trajectory_containment(cases, tol=1e-6)
    elapsed = time.perf_counter() - t0
    ok = result.passed and elapsed < 60.0
    assert _report("2 containment", ok,
                   f"{result.detail} [{elapsed:.1f}s of 60s budget]")


def test_criterion_3_positive_inclusion(trajectory_cases):
    cases, _ = trajectory_cases
    result = check_positive_inclusion(cases)
    assert _report("3 positive inclusion", result.passed, result.detail)


def test_criterion_4_radius_decay(trajectory_cases, episode_grid):
    cases, _ = trajectory_cases
    result = check_radius_decay(cases, bound=1e-3)
    grid, _ = episode_grid
    worst_episode = max(res.pred_radius[-1] for res in grid.values())
    ok = result.passed and worst_episode < 1e-3
    assert _report("4 radius decay", ok,
                   f"{result.detail}; worst episode stopping radius "
                   f"{worst_episode:.3e}")


def test_criterion_5_branch_continuity():
    result = check_branch_continuity(ACC_SEED, n=1000, tol=1e-9)
    assert _report("5 branch continuity", result.passed, result.detail)


def test_criterion_6_governor_safety_and_convergence(episode_grid):
    grid, elapsed = episode_grid
    problems = []
    for (name, method), res in grid.items():
        if res.collision_flag:
            problems.append(f"{name}/{method}: collision")
        if not res.converged:
            problems.append(f"{name}/{method}: no convergence")
        if not res.final_goal_distance < 1e-3:
            problems.append(f"{name}/{method}: final distance "
                            f"{res.final_goal_distance:.2e}")
        if not np.all(np.diff(res.s) >= -1e-12):
            problems.append(f"{name}/{method}: path parameter not monotone")
    ok = not problems and elapsed < 300.0
    detail = (f"{len(grid)} runs over {len(SHIPPED)} scenarios, "
              f"min margin {min(r.min_margin for r in grid.values()):.3f} m "
              f"[{elapsed:.0f}s of 300s budget]")
    if problems:
        detail += "; " + "; ".join(problems)
    assert _report("6 governor safety/convergence", ok, detail)


def test_criterion_7_travel_time_orderings(office_eps_sweep):
    sweep = office_eps_sweep
    tt = {key: res.travel_time for key, res in sweep.items()}
    orderings = (
        tt[(0.5, "forward-sim")] <= tt[(0.5, "triangle")] < tt[(0.5, "circle")]
    )
    eps_effect = all(tt[(0.5, m)] < tt[(0.75, m)] for m in METHODS)
    cost_fs = sweep[(0.5, "forward-sim")].governor_eval_seconds
    cost_tri = sweep[(0.5, "triangle")].governor_eval_seconds
    cost_ratio = cost_fs / cost_tri
    ok = orderings and eps_effect and cost_ratio >= 10.0
    times = ", ".join(f"{m}@{e}: {tt[(e, m)]:.2f}s"
                      for e in (0.5, 0.75) for m in METHODS)
    assert _report("7 travel-time orderings", ok,
                   f"{times}; forward-sim/triangle eval cost ratio "
                   f"{cost_ratio:.1f}x")


def test_criterion_8_numerics():
    order = check_rk4_order(ratio_range=(12.0, 20.0))
    holonomy = check_nonholonomic_exact(ACC_SEED, 10_000)
    ok = order.passed and holonomy.passed
    assert _report("8 numerics", ok, f"{order.detail}; {holonomy.detail}")


def test_criterion_9_fixed_headway_offset():
    result = check_fixed_headway_offset(ACC_SEED, n=20, tol=1e-3)
    assert _report("9 fixed-headway offset", result.passed, result.detail)
