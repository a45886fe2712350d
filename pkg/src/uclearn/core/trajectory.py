"""Trajectories, tasks, and labeled trajectory collections."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionMismatchError, ValidationError


def _frozen_array(a, dtype=float) -> np.ndarray:
    out = np.array(a, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Trajectory:
    """A time-indexed state sequence with paired controls.

    states has shape (T, n) with T >= 2 and controls has shape (T-1, m).
    For continuous-time systems sampled as piecewise-constant control
    segments, the last control column holds the segment duration and dt
    is the integrator step; purely discrete systems carry dt=None.
    """

    states: np.ndarray
    controls: np.ndarray
    dt: float | None = None
    cost_cache: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "states", _frozen_array(self.states))
        object.__setattr__(self, "controls", _frozen_array(self.controls))
        if self.states.ndim != 2 or self.states.shape[0] < 2:
            raise ValidationError("states must be a (T, n) array with T >= 2")
        if self.controls.ndim != 2:
            raise ValidationError("controls must be a (T-1, m) array")
        if self.controls.shape[0] != self.states.shape[0] - 1:
            raise DimensionMismatchError(
                f"controls length {self.controls.shape[0]} != T-1 = {self.states.shape[0] - 1}"
            )
        if not (np.isfinite(self.states).all() and np.isfinite(self.controls).all()):
            raise ValidationError("trajectory entries must all be finite")
        if self.dt is not None and not self.dt > 0:
            raise ValidationError("dt must be positive when present")

    @property
    def T(self) -> int:
        return self.states.shape[0]

    @property
    def n(self) -> int:
        return self.states.shape[1]

    @property
    def m(self) -> int:
        return self.controls.shape[1]

    def subsegment(self, a: int, b: int) -> "Trajectory":
        """The sub-trajectory on waypoint indices a..b inclusive."""
        if not (0 <= a < b <= self.T - 1):
            raise ValidationError(f"bad window ({a}, {b}) for horizon {self.T}")
        return Trajectory(self.states[a : b + 1], self.controls[a:b], dt=self.dt)

    def stacked(self) -> np.ndarray:
        """Stack as (x_1, u_1, x_2, u_2, ..., u_{T-1}, x_T)."""
        return stack_states_controls(self.states, self.controls)


def stack_states_controls(states: np.ndarray, controls: np.ndarray) -> np.ndarray:
    T, n = states.shape
    m = controls.shape[1]
    out = np.empty(T * n + (T - 1) * m)
    w = n + m
    for t in range(T - 1):
        out[t * w : t * w + n] = states[t]
        out[t * w + n : (t + 1) * w] = controls[t]
    out[(T - 1) * w :] = states[T - 1]
    return out


def unstack_trajectory(vec: np.ndarray, n: int, m: int, T: int, dt: float | None = None) -> Trajectory:
    w = n + m
    if vec.shape[-1] != T * n + (T - 1) * m:
        raise DimensionMismatchError(
            f"stacked vector length {vec.shape[-1]} != {T * n + (T - 1) * m}"
        )
    states = np.empty((T, n))
    controls = np.empty((T - 1, m))
    for t in range(T - 1):
        states[t] = vec[t * w : t * w + n]
        controls[t] = vec[t * w + n : (t + 1) * w]
    states[T - 1] = vec[(T - 1) * w :]
    return Trajectory(states, controls, dt=dt)


@dataclass(frozen=True)
class Task:
    """Start/goal constraints plus the goal-penalty parameters.

    goal_dims names the state dimensions the goal constrains (None means
    all of them).  goal_tolerance (eps) is the tolerance demonstrations
    and emitted samples must meet; relaxed_tolerance (eps_hat >= eps) is
    the looser tolerance used while a non-convex chain walks.
    """

    start: np.ndarray
    goal: np.ndarray
    horizon: int
    goal_tolerance: float = 1e-3
    relaxed_tolerance: float | None = None
    goal_penalty_weight: float = 1e10
    goal_dims: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "start", _frozen_array(self.start))
        object.__setattr__(self, "goal", _frozen_array(self.goal))
        if self.relaxed_tolerance is None:
            object.__setattr__(self, "relaxed_tolerance", self.goal_tolerance)
        if not self.goal_tolerance > 0:
            raise ValidationError("goal tolerance must be positive")
        if self.relaxed_tolerance < self.goal_tolerance:
            raise ValidationError("relaxed tolerance must be >= goal tolerance")
        if not self.goal_penalty_weight > 0:
            raise ValidationError("goal penalty weight must be positive")
        if self.horizon < 2:
            raise ValidationError("horizon must be at least 2")

    def goal_indices(self, n: int) -> np.ndarray:
        if self.goal_dims is None:
            return np.arange(n)
        return np.asarray(self.goal_dims, dtype=int)

    def goal_error(self, terminal_state: np.ndarray) -> float:
        idx = self.goal_indices(terminal_state.shape[0])
        g = self.goal if self.goal.shape[0] == idx.shape[0] else self.goal[idx]
        return float(np.linalg.norm(terminal_state[idx] - g))


@dataclass(frozen=True)
class SafeRecord:
    trajectory: Trajectory
    cells: np.ndarray  # sorted unique cell ids


@dataclass(frozen=True)
class UnsafeRecord:
    trajectory: Trajectory
    cells: np.ndarray
    p: float
    # Window of the demonstration this sample perturbs, as waypoint
    # indices, plus the elapsed duration of the sampled segment (seconds
    # for continuous systems, steps otherwise). Used by the
    # continuous-to-discrete padding analysis.
    window: tuple[int, int] | None = None
    window_duration: float | None = None

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise ValidationError(f"unsafe probability must lie in (0, 1], got {self.p}")


@dataclass
class LabeledTrajectorySet:
    """Safe demonstrations and inferred-unsafe samples over one grid."""

    grid: "GridSpec"  # noqa: F821 - imported lazily to avoid a cycle
    safe: list[SafeRecord] = field(default_factory=list)
    unsafe: list[UnsafeRecord] = field(default_factory=list)

    def add_safe(self, trajectory: Trajectory, cells: np.ndarray) -> None:
        self._check_cells(cells)
        self.safe.append(SafeRecord(trajectory, cells))

    def add_unsafe(self, trajectory: Trajectory, cells: np.ndarray, p: float,
                   window=None, window_duration=None) -> None:
        self._check_cells(cells)
        self.unsafe.append(UnsafeRecord(trajectory, cells, p, window, window_duration))

    def _check_cells(self, cells: np.ndarray) -> None:
        if len(cells) and (cells.min() < 0 or cells.max() >= self.grid.total_cells):
            raise ValidationError("cell ids out of range for the stored grid")
