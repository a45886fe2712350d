"""Dynamics models, control sets, rollouts, and residual checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import ControlBoundError, DimensionMismatchError, ValidationError
from .trajectory import Trajectory

DISCRETE_LINEAR = "discrete-linear"
DISCRETE_NONLINEAR = "discrete-nonlinear"
CONTINUOUS = "continuous"

# Fixed-step RK4 re-integration reproduces a stored rollout exactly, so
# the effective integrator tolerance is dominated by round-off.
RK4_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Box:
    """Axis-aligned box, lo <= x <= hi componentwise."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.lo, dtype=float))
        hi = np.atleast_1d(np.asarray(self.hi, dtype=float))
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo.shape != hi.shape or np.any(lo > hi):
            raise ValidationError("box bounds must satisfy lo <= hi")

    @property
    def dim(self) -> int:
        return self.lo.shape[0]

    def contains(self, points: np.ndarray, tol: float = 0.0) -> np.ndarray:
        pts = np.atleast_2d(points)
        ok = np.logical_and(pts >= self.lo - tol, pts <= self.hi + tol).all(axis=1)
        return ok if np.ndim(points) > 1 else bool(ok[0])

    def is_bounded(self) -> bool:
        return bool(np.isfinite(self.lo).all() and np.isfinite(self.hi).all())

    def vertices(self) -> np.ndarray:
        d = self.dim
        verts = np.empty((2**d, d))
        for i in range(2**d):
            for j in range(d):
                verts[i, j] = self.hi[j] if (i >> j) & 1 else self.lo[j]
        return verts

    def grid(self, points_per_dim: int) -> np.ndarray:
        axes = [np.linspace(self.lo[j], self.hi[j], points_per_dim) for j in range(self.dim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)


@dataclass(frozen=True)
class ControlSet:
    """Admissible control set, either an axis-aligned box or a 2-norm ball."""

    kind: str  # "box" | "ball"
    box: Box | None = None
    radius: float | None = None
    dim_ball: int | None = None

    @staticmethod
    def from_box(lo, hi) -> "ControlSet":
        return ControlSet(kind="box", box=Box(lo, hi))

    @staticmethod
    def from_ball(radius: float, dim: int) -> "ControlSet":
        if radius <= 0:
            raise ValidationError("ball radius must be positive")
        return ControlSet(kind="ball", radius=float(radius), dim_ball=int(dim))

    @property
    def dim(self) -> int:
        return self.box.dim if self.kind == "box" else self.dim_ball

    def contains(self, controls: np.ndarray, tol: float = 1e-9) -> np.ndarray:
        u = np.atleast_2d(controls)
        if u.shape[1] != self.dim:
            raise DimensionMismatchError(
                f"control dimension {u.shape[1]} != control set dimension {self.dim}"
            )
        if self.kind == "box":
            ok = self.box.contains(u, tol=tol)
        else:
            ok = np.linalg.norm(u, axis=1) <= self.radius + tol
        return ok if np.ndim(controls) > 1 else bool(np.atleast_1d(ok)[0])

    def is_bounded(self) -> bool:
        return True if self.kind == "ball" else self.box.is_bounded()

    def sample_grid(self, points_per_dim: int) -> np.ndarray:
        if self.kind == "box":
            return self.box.grid(points_per_dim)
        # polar-style grid covering the ball, boundary included
        radii = np.linspace(0.0, self.radius, points_per_dim)
        if self.dim == 1:
            return np.concatenate([-radii[::-1], radii]).reshape(-1, 1)
        if self.dim == 2:
            angles = np.linspace(0.0, 2 * math.pi, 4 * points_per_dim, endpoint=False)
            pts = [np.zeros((1, 2))]
            for r in radii[1:]:
                pts.append(np.stack([r * np.cos(angles), r * np.sin(angles)], axis=1))
            return np.concatenate(pts, axis=0)
        raise ValidationError("ball control grids supported for dim <= 2")


@dataclass(frozen=True)
class DynamicsModel:
    """Known system dynamics plus control bounds and a state bounding box.

    kind selects the step model:
      - discrete-linear: x' = A x + B u
      - discrete-nonlinear: x' = step(x, u)
      - continuous: xdot = field(x, u), integrated with fixed-step RK4 of
        maximum step dt; trajectory controls then carry (u, duration)
        per segment, duration in the last column.
    """

    kind: str
    control_set: ControlSet
    state_box: Box
    A: np.ndarray | None = None
    B: np.ndarray | None = None
    step_fn: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    field_fn: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    dt: float | None = None
    name: str = ""

    def __post_init__(self):
        if self.kind == DISCRETE_LINEAR:
            A = np.asarray(self.A, dtype=float)
            B = np.asarray(self.B, dtype=float)
            object.__setattr__(self, "A", A)
            object.__setattr__(self, "B", B)
            if A.ndim != 2 or A.shape[0] != A.shape[1]:
                raise DimensionMismatchError("A must be square")
            if B.ndim != 2 or B.shape[0] != A.shape[0]:
                raise DimensionMismatchError("B rows must match A")
            if B.shape[1] != self.control_set.dim:
                raise DimensionMismatchError("B columns must match the control set")
        elif self.kind == DISCRETE_NONLINEAR:
            if self.step_fn is None:
                raise ValidationError("discrete-nonlinear dynamics need step_fn")
        elif self.kind == CONTINUOUS:
            if self.field_fn is None or self.dt is None:
                raise ValidationError("continuous dynamics need field_fn and dt")
        else:
            raise ValidationError(f"unknown dynamics kind {self.kind!r}")
        if self.state_box is None or not isinstance(self.state_box, Box):
            raise ValidationError("state_box is required")

    @property
    def n(self) -> int:
        return self.A.shape[0] if self.kind == DISCRETE_LINEAR else self.state_box.dim

    @property
    def m(self) -> int:
        return self.control_set.dim

    @property
    def control_columns(self) -> int:
        """Number of columns of a trajectory's control rows."""
        return self.m + 1 if self.kind == CONTINUOUS else self.m

    def residual_tolerance(self) -> float:
        return 10.0 * RK4_TOLERANCE if self.kind == CONTINUOUS else 1e-9

    def step(self, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        if self.kind == DISCRETE_LINEAR:
            return self.A @ x + self.B @ u
        if self.kind == DISCRETE_NONLINEAR:
            return np.asarray(self.step_fn(x, u), dtype=float)
        return integrate_segment(self.field_fn, x, u[:-1], u[-1], self.dt)


def rk4_step(field, x: np.ndarray, u: np.ndarray, h: float) -> np.ndarray:
    k1 = np.asarray(field(x, u))
    k2 = np.asarray(field(x + 0.5 * h * k1, u))
    k3 = np.asarray(field(x + 0.5 * h * k2, u))
    k4 = np.asarray(field(x + h * k3, u))
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate_segment(field, x: np.ndarray, u: np.ndarray, duration: float, dt: float) -> np.ndarray:
    """RK4 over one constant-control segment, step count ceil(duration/dt)."""
    if duration < 0:
        raise ValidationError("segment duration must be nonnegative")
    if duration == 0:
        return np.array(x, dtype=float)
    n_sub = max(1, int(math.ceil(duration / dt - 1e-12)))
    h = duration / n_sub
    out = np.array(x, dtype=float)
    for _ in range(n_sub):
        out = rk4_step(field, out, u, h)
    return out


def rollout(dynamics: DynamicsModel, x0: np.ndarray, controls: np.ndarray) -> Trajectory:
    """Roll the control sequence out from x0.

    The returned trajectory satisfies the step map exactly for discrete
    kinds and to integrator accuracy for continuous kinds.  Controls
    outside the admissible set raise ControlBoundError.
    """
    x0 = np.asarray(x0, dtype=float)
    controls = np.atleast_2d(np.asarray(controls, dtype=float))
    if controls.shape[1] != dynamics.control_columns:
        raise DimensionMismatchError(
            f"expected {dynamics.control_columns} control columns, got {controls.shape[1]}"
        )
    physical = controls[:, : dynamics.m]
    ok = dynamics.control_set.contains(physical)
    if not np.all(ok):
        bad = int(np.argmin(ok))
        raise ControlBoundError(f"control at step {bad} outside the admissible set")
    if dynamics.kind == CONTINUOUS and np.any(controls[:, -1] < 0):
        raise ValidationError("segment durations must be nonnegative")
    states = np.empty((controls.shape[0] + 1, x0.shape[0]))
    states[0] = x0
    for t in range(controls.shape[0]):
        states[t + 1] = dynamics.step(states[t], controls[t])
    return Trajectory(states, controls, dt=dynamics.dt)


def dynamics_residual(dynamics: DynamicsModel, traj: Trajectory) -> tuple[float, int]:
    """Max-norm one-step reproduction error and the step attaining it."""
    worst = 0.0
    worst_step = 0
    for t in range(traj.T - 1):
        pred = dynamics.step(traj.states[t], traj.controls[t])
        err = float(np.max(np.abs(pred - traj.states[t + 1])))
        if err > worst:
            worst, worst_step = err, t
    return worst, worst_step


def single_integrator_2d(u_norm_max: float = 0.5, world: Box | None = None) -> DynamicsModel:
    """x_{t+1} = x_t + u_t with a 2-norm control bound."""
    world = world or Box([0.0, 0.0], [1.0, 1.0])
    return DynamicsModel(
        kind=DISCRETE_LINEAR,
        A=np.eye(2),
        B=np.eye(2),
        control_set=ControlSet.from_ball(u_norm_max, 2),
        state_box=world,
        name="single-integrator",
    )


def double_integrator_2d(u_hi=(20.0, 10.0), world: Box | None = None) -> DynamicsModel:
    """Zero-order-hold double integrator; state (x, vx, y, vy)."""
    Ab = np.array([[1.0, 1.0], [0.0, 1.0]])  # expm of [[0,1],[0,0]]
    Eb = np.array([[1.0, 0.5], [0.0, 1.0]])  # int_0^1 expm(A tau) dtau
    A = np.zeros((4, 4))
    A[:2, :2] = Ab
    A[2:, 2:] = Ab
    sel = np.zeros((4, 2))
    sel[1, 0] = 1.0
    sel[3, 1] = 1.0
    E = np.zeros((4, 4))
    E[:2, :2] = Eb
    E[2:, 2:] = Eb
    B = E @ sel
    u_hi = np.asarray(u_hi, dtype=float)
    if world is None:
        world = Box([0.0, -2.0, 0.0, -2.0], [1.0, 2.0, 1.0, 2.0])
    return DynamicsModel(
        kind=DISCRETE_LINEAR,
        A=A,
        B=B,
        control_set=ControlSet.from_box(-u_hi, u_hi),
        state_box=world,
        name="double-integrator",
    )


def dubins_field(x: np.ndarray, u: np.ndarray) -> np.ndarray:
    theta = x[2]
    return np.array([math.cos(theta), math.sin(theta), u[0]])


def dubins_car(u_max: float = 1.0, dt: float = 0.1, world: Box | None = None) -> DynamicsModel:
    """Unit-speed Dubins car, state (x, y, heading), turn-rate control."""
    if world is None:
        world = Box([0.0, 0.0, -math.pi], [5.0, 5.0, math.pi])
    return DynamicsModel(
        kind=CONTINUOUS,
        field_fn=dubins_field,
        dt=dt,
        control_set=ControlSet.from_box([-u_max], [u_max]),
        state_box=world,
        name="dubins",
    )
