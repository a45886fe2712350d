"""Lower-cost trajectory sampling via hit-and-run."""

from .consistency import (
    DynamicsConsistency,
    QuadraticWalkSpace,
    build_dynamics_consistency,
    full_horizon_walk,
    stacked_dim,
    stacked_layout,
    window_walk,
)
from .hitandrun import (
    CONVEX,
    ELLIPSOID,
    NONCONVEX,
    SampleBatch,
    SamplerConfig,
    ellipsoid_line_endpoints,
    hit_and_run,
    uniform_ellipsoid_samples,
    validate_demo,
)
from .labeling import HARD, RAMP, label_suboptimal
from .subtraj import enumerate_windows, sample_subtrajectories

__all__ = [
    "CONVEX",
    "ELLIPSOID",
    "HARD",
    "NONCONVEX",
    "RAMP",
    "DynamicsConsistency",
    "QuadraticWalkSpace",
    "SampleBatch",
    "SamplerConfig",
    "build_dynamics_consistency",
    "ellipsoid_line_endpoints",
    "enumerate_windows",
    "full_horizon_walk",
    "hit_and_run",
    "label_suboptimal",
    "sample_subtrajectories",
    "stacked_dim",
    "stacked_layout",
    "uniform_ellipsoid_samples",
    "validate_demo",
    "window_walk",
]
