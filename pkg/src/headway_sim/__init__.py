"""Adaptive-headway unicycle control, feedback motion prediction, and
time-governed safe path following around polygonal obstacles."""

__version__ = "0.1.0"

from .geom import (
    Polygon,
    Segment,
    Triangle,
    Vec2,
    point_segment_distance,
    polygon_point_distance,
    rotate,
    segment_segment_distance,
    triangle_contains,
)
from .unicycle import (
    ControlInput,
    ControllerParams,
    HeadwayFrame,
    UnicycleState,
    adaptive_headway_control,
    fixed_headway_control,
    headway_distance,
    headway_frame,
    headway_point,
    unicycle_derivative,
    wrap_angle,
)
from .ode import SimConfig, Trajectory, integrate, rk4_step, simulate_to_goal
from .prediction import (
    Disk,
    Hull,
    PredictionSet,
    Tri,
    circular_prediction,
    forward_sim_prediction,
    goal_alignment,
    prediction_distance,
    prediction_goal_radius,
    triangular_bound,
    triangular_prediction,
)
from .environment import (
    ClearanceError,
    Environment,
    ReferencePath,
    free_space_margin,
    path_clearance,
    path_eval,
    safety_distance,
)
from .simulation import (
    METHODS,
    EpisodeResult,
    GovernorState,
    compare_methods,
    governor_derivative,
    run_episode,
)
from .scenario import (
    Scenario,
    ScenarioError,
    ScenarioParseError,
    ScenarioValidationError,
    load_scenario,
    write_scenario,
)

__all__ = [name for name in dir() if not name.startswith("_")]
