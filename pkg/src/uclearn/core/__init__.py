"""Domain types shared by every subpackage."""

from .costs import (
    CONTROL_EFFORT,
    PATH_LENGTH,
    PATH_LENGTH_SQ,
    QUADRATIC,
    TOTAL_TIME,
    CostFunction,
    augmented_cost,
    evaluate_cost,
    goal_penalty,
)
from .dynamics import (
    CONTINUOUS,
    DISCRETE_LINEAR,
    DISCRETE_NONLINEAR,
    Box,
    ControlSet,
    DynamicsModel,
    double_integrator_2d,
    dubins_car,
    dynamics_residual,
    rollout,
    single_integrator_2d,
)
from .features import FeatureMap
from .files import (
    TrajectoryRecord,
    read_grid,
    read_occupancy,
    read_trajectories,
    write_grid,
    write_occupancy,
    write_trajectories,
)
from .grid import (
    BINARY,
    OUT_OF_RANGE,
    PROBABILISTIC,
    GridSpec,
    OccupancyEstimate,
    cellset,
    grid_points,
)
from .trajectory import (
    LabeledTrajectorySet,
    SafeRecord,
    Task,
    Trajectory,
    UnsafeRecord,
    stack_states_controls,
    unstack_trajectory,
)

__all__ = [
    "BINARY",
    "CONTINUOUS",
    "CONTROL_EFFORT",
    "DISCRETE_LINEAR",
    "DISCRETE_NONLINEAR",
    "OUT_OF_RANGE",
    "PATH_LENGTH",
    "PATH_LENGTH_SQ",
    "PROBABILISTIC",
    "QUADRATIC",
    "TOTAL_TIME",
    "Box",
    "ControlSet",
    "CostFunction",
    "DynamicsModel",
    "FeatureMap",
    "GridSpec",
    "LabeledTrajectorySet",
    "OccupancyEstimate",
    "SafeRecord",
    "Task",
    "Trajectory",
    "TrajectoryRecord",
    "UnsafeRecord",
    "augmented_cost",
    "cellset",
    "double_integrator_2d",
    "dubins_car",
    "dynamics_residual",
    "evaluate_cost",
    "goal_penalty",
    "grid_points",
    "read_grid",
    "read_occupancy",
    "read_trajectories",
    "rollout",
    "single_integrator_2d",
    "stack_states_controls",
    "unstack_trajectory",
    "write_grid",
    "write_occupancy",
    "write_trajectories",
]
