"""Dynamics-consistency matrix and quadratic walk-space construction.

For linear dynamics the dynamically feasible stacked trajectories form
the eigenvalue-1 eigenspace of a singular consistency matrix; applying
the matrix T-1 times performs a rollout one step at a time.  Lower-cost
sets then become ellipsoids in the stacked space, with the goal
constraint folded into the quadratic form by appending the goal
coordinates as pinned extra components.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..core.costs import CostFunction, augmented_cost, evaluate_cost
from ..core.dynamics import DISCRETE_LINEAR, DynamicsModel
from ..core.trajectory import Task, Trajectory
from ..errors import ValidationError


def stacked_dim(n: int, m: int, T: int) -> int:
    return T * n + (T - 1) * m


def stacked_layout(n: int, m: int, T: int) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays (T, n) and (T-1, m) into the stacked vector."""
    w = n + m
    state_idx = np.empty((T, n), dtype=np.intp)
    control_idx = np.empty((T - 1, m), dtype=np.intp)
    for t in range(T - 1):
        state_idx[t] = np.arange(t * w, t * w + n)
        control_idx[t] = np.arange(t * w + n, (t + 1) * w)
    state_idx[T - 1] = np.arange((T - 1) * w, (T - 1) * w + n)
    return state_idx, control_idx


@dataclass(frozen=True)
class DynamicsConsistency:
    """One-step rollout matrix over the stacked trajectory vector.

    Fixes the controls and the initial state and replaces each state with
    the one reached from its predecessor, so the (T-1)-th power projects
    any stacked vector onto the dynamically feasible subspace.
    """

    d1: np.ndarray
    horizon: int
    n: int
    m: int

    @property
    def dim(self) -> int:
        return self.d1.shape[0]

    def feasible_projector(self) -> np.ndarray:
        return np.linalg.matrix_power(self.d1, self.horizon - 1)


def build_dynamics_consistency(dynamics: DynamicsModel, T: int) -> DynamicsConsistency:
    if dynamics.kind != DISCRETE_LINEAR:
        raise ValidationError(
            "dynamics-consistency matrices exist only for discrete-linear "
            "dynamics; use the nonconvex sampling variant instead"
        )
    n, m = dynamics.n, dynamics.m
    d = stacked_dim(n, m, T)
    state_idx, control_idx = stacked_layout(n, m, T)
    D1 = np.zeros((d, d))
    D1[np.ix_(state_idx[0], state_idx[0])] = np.eye(n)
    for t in range(T - 1):
        D1[np.ix_(control_idx[t], control_idx[t])] = np.eye(m)
        D1[np.ix_(state_idx[t + 1], state_idx[t])] = dynamics.A
        D1[np.ix_(state_idx[t + 1], control_idx[t])] = dynamics.B
    return DynamicsConsistency(d1=D1, horizon=T, n=n, m=m)


@dataclass(frozen=True)
class QuadraticWalkSpace:
    """Hit-and-run space for {w : w' M w <= level} with pinned coordinates.

    to_stacked maps a walk vector to the feasible stacked trajectory it
    represents (rollout of its initial state and controls).
    """

    M: np.ndarray
    start: np.ndarray
    level: float
    free: np.ndarray  # bool mask, False = pinned
    to_stacked: np.ndarray
    n: int
    m: int
    horizon: int

    @property
    def dim(self) -> int:
        return self.M.shape[0]


def full_horizon_walk(dynamics: DynamicsModel, cost: CostFunction, task: Task,
                      demo: Trajectory) -> QuadraticWalkSpace:
    """Walk over whole trajectories below the demo's goal-augmented cost."""
    n, m, T = demo.n, demo.m, demo.T
    d = stacked_dim(n, m, T)
    consistency = build_dynamics_consistency(dynamics, T)
    P = consistency.feasible_projector()
    V = cost.stacked_quadratic(n, m, T)

    gd = task.goal_indices(n)
    g = gd.shape[0]
    state_idx, _ = stacked_layout(n, m, T)
    sel = np.zeros((g, d))
    sel[np.arange(g), state_idx[T - 1][gd]] = 1.0
    alpha = task.goal_penalty_weight

    D = d + g
    M = np.zeros((D, D))
    M[:d, :d] = V + alpha * sel.T @ sel
    M[:d, d:] = -alpha * sel.T
    M[d:, :d] = -alpha * sel
    M[d:, d:] = alpha * np.eye(g)

    P_aug = np.zeros((D, D))
    P_aug[:d, :d] = P
    P_aug[d:, d:] = np.eye(g)
    M = P_aug.T @ M @ P_aug

    goal_vals = task.goal if task.goal.shape[0] == g else task.goal[gd]
    start = np.concatenate([demo.stacked(), goal_vals])
    free = np.ones(D, dtype=bool)
    free[:n] = False  # the start state is fixed
    free[d:] = False  # the appended goal coordinates never move

    to_stacked = np.zeros((d, D))
    to_stacked[:, :d] = P
    return QuadraticWalkSpace(
        M=M,
        start=start,
        level=augmented_cost(demo, cost, task),
        free=free,
        to_stacked=to_stacked,
        n=n,
        m=m,
        horizon=T,
    )


def window_walk(dynamics: DynamicsModel, cost: CostFunction, demo: Trajectory,
                a: int, b: int) -> QuadraticWalkSpace:
    """Walk over the demo's (a, b) sub-trajectory with both endpoints exact.

    The walk lives on the affine slice where the rollout of the window
    reproduces the demo waypoint at b; a homogeneous coordinate absorbs
    the affine offset so the chord solve stays a pure quadratic.
    """
    sub = demo.subsegment(a, b)
    n, m, T = sub.n, sub.m, sub.T
    d = stacked_dim(n, m, T)
    consistency = build_dynamics_consistency(dynamics, T)
    P = consistency.feasible_projector()
    V = cost.stacked_quadratic(n, m, T)
    M_z = P.T @ V @ P

    state_idx, _ = stacked_layout(n, m, T)
    # endpoint constraint rows: last state of the rollout equals demo's
    C = P[state_idx[T - 1], :]
    free_cols = np.ones(d, dtype=bool)
    free_cols[state_idx[0]] = False
    N_free = scipy.linalg.null_space(C[:, free_cols])
    k = N_free.shape[1]
    N = np.zeros((d, k))
    N[free_cols, :] = N_free

    z0 = sub.stacked()
    # homogeneous walk vector (y, 1)
    M = np.zeros((k + 1, k + 1))
    M[:k, :k] = N.T @ M_z @ N
    cross = N.T @ M_z @ z0
    M[:k, k] = cross
    M[k, :k] = cross
    M[k, k] = float(z0 @ M_z @ z0)

    start = np.zeros(k + 1)
    start[k] = 1.0
    free = np.ones(k + 1, dtype=bool)
    free[k] = False

    to_stacked = np.zeros((d, k + 1))
    to_stacked[:, :k] = P @ N
    to_stacked[:, k] = P @ z0
    return QuadraticWalkSpace(
        M=M,
        start=start,
        level=evaluate_cost(sub, cost),
        free=free,
        to_stacked=to_stacked,
        n=n,
        m=m,
        horizon=T,
    )
