"""Task cost functions over state-control trajectories."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatchError, ValidationError
from .trajectory import Task, Trajectory

CONTROL_EFFORT = "control-effort"
PATH_LENGTH_SQ = "path-length-squared"
PATH_LENGTH = "path-length"
TOTAL_TIME = "total-time"
QUADRATIC = "quadratic"

_KINDS = (CONTROL_EFFORT, PATH_LENGTH_SQ, PATH_LENGTH, TOTAL_TIME, QUADRATIC)


@dataclass(frozen=True)
class CostFunction:
    """One of the supported cost families.

    control-effort      sum_t ||u_t||^2
    path-length-squared sum_t ||x_{t+1} - x_t||^2
    path-length         sum_t ||x_{t+1} - x_t||
    total-time          sum of segment durations (continuous trajectories)
    quadratic           xi' V xi on the stacked trajectory vector

    All built-in stage costs are additive, hence strictly monotone; an
    explicit quadratic V is not monotone in general unless declared.
    """

    kind: str
    V: np.ndarray | None = None
    strictly_monotone: bool | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValidationError(f"unknown cost kind {self.kind!r}")
        if self.kind == QUADRATIC:
            if self.V is None:
                raise ValidationError("quadratic cost requires V")
            V = np.asarray(self.V, dtype=float)
            object.__setattr__(self, "V", V)
            if V.ndim != 2 or V.shape[0] != V.shape[1]:
                raise DimensionMismatchError("V must be square")
            if not np.allclose(V, V.T, atol=1e-12):
                raise ValidationError("V must be symmetric")
            eigs = np.linalg.eigvalsh(V)
            if eigs.min() < -1e-10 * max(1.0, abs(eigs.max())):
                raise ValidationError("V must be positive semidefinite")
        if self.strictly_monotone is None:
            object.__setattr__(self, "strictly_monotone", self.kind != QUADRATIC)

    @property
    def is_quadratic(self) -> bool:
        return self.kind in (CONTROL_EFFORT, PATH_LENGTH_SQ, QUADRATIC)

    @property
    def is_convex(self) -> bool:
        return True  # every supported family is convex in the stacked vector

    def stacked_quadratic(self, n: int, m: int, T: int) -> np.ndarray:
        """The PSD matrix V with cost(xi) = xi' V xi on the stacked vector."""
        d = T * n + (T - 1) * m
        w = n + m
        if self.kind == QUADRATIC:
            if self.V.shape[0] != d:
                raise DimensionMismatchError(
                    f"V is {self.V.shape[0]}x{self.V.shape[0]}, stacked dimension is {d}"
                )
            return self.V
        V = np.zeros((d, d))
        if self.kind == CONTROL_EFFORT:
            for t in range(T - 1):
                s = t * w + n
                V[s : s + m, s : s + m] = np.eye(m)
            return V
        if self.kind == PATH_LENGTH_SQ:
            for t in range(T - 1):
                i = t * w
                j = (t + 1) * w
                V[i : i + n, i : i + n] += np.eye(n)
                V[j : j + n, j : j + n] += np.eye(n)
                V[i : i + n, j : j + n] -= np.eye(n)
                V[j : j + n, i : i + n] -= np.eye(n)
            return V
        raise ValidationError(f"{self.kind} cost has no quadratic form")


def evaluate_cost(traj: Trajectory, cost: CostFunction) -> float:
    """Task cost of a trajectory; deterministic and cache-free."""
    if cost.kind == CONTROL_EFFORT:
        return float(np.sum(traj.controls**2))
    if cost.kind == PATH_LENGTH_SQ:
        d = np.diff(traj.states, axis=0)
        return float(np.sum(d**2))
    if cost.kind == PATH_LENGTH:
        d = np.diff(traj.states, axis=0)
        return float(np.sum(np.linalg.norm(d, axis=1)))
    if cost.kind == TOTAL_TIME:
        if traj.m < 1:
            raise DimensionMismatchError("total-time cost needs duration controls")
        return float(np.sum(traj.controls[:, -1]))
    xi = traj.stacked()
    if cost.V.shape[0] != xi.shape[0]:
        raise DimensionMismatchError(
            f"V is {cost.V.shape[0]}x{cost.V.shape[0]}, stacked dimension is {xi.shape[0]}"
        )
    return float(xi @ cost.V @ xi)


def goal_penalty(traj: Trajectory, task: Task) -> float:
    return task.goal_penalty_weight * task.goal_error(traj.states[-1]) ** 2


def augmented_cost(traj: Trajectory, cost: CostFunction, task: Task) -> float:
    """Task cost plus the quadratic goal penalty used while sampling."""
    return evaluate_cost(traj, cost) + goal_penalty(traj, task)
