"""Hit-and-run sampling of lower-cost trajectories.

Three variants, chosen by the structure of the problem: a closed-form
chord solve for linear dynamics with quadratic cost (the sub-level set
is an ellipsoid in the stacked trajectory space), a root-finding chord
solve for general convex costs, and a backtracking line search when the
feasible set is non-convex (nonlinear or continuous-time dynamics).

Control bounds are enforced by rejection at emission; the goal
constraint is folded into the cost as a quadratic penalty, with the
non-convex variant additionally walking under a relaxed goal tolerance
and filtering emitted samples back to the strict one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from .. import seeding
from .._kernels import backend as _backend
from ..core.costs import (
    CONTROL_EFFORT,
    PATH_LENGTH,
    PATH_LENGTH_SQ,
    TOTAL_TIME,
    CostFunction,
    augmented_cost,
    evaluate_cost,
)
from ..core.dynamics import (
    CONTINUOUS,
    DISCRETE_LINEAR,
    DynamicsModel,
    dubins_field,
    dynamics_residual,
    rollout,
)
from ..core.trajectory import Task, Trajectory
from ..errors import DegenerateDirectionError, ValidationError
from .consistency import QuadraticWalkSpace, full_horizon_walk, stacked_layout

ELLIPSOID = "ellipsoid"
CONVEX = "convex"
NONCONVEX = "nonconvex"

_TAU_FLOOR = 1e-9


@dataclass(frozen=True)
class SamplerConfig:
    """Hit-and-run configuration.

    n_samples counts post-burn-in chain states; emitted samples are the
    subset passing the control/goal/cost checks (control handling is
    rejection, never projection).  beta_range and min_interval drive the
    non-convex backtracking line search.  Goal-related overrides default
    to the task's own values.
    """

    n_samples: int
    seed: int = 0
    burn_in: int = 100
    thinning: int = 1
    variant: str = ELLIPSOID
    beta_range: tuple[float, float] = (-4.0, 4.0)
    min_interval: float = 1e-10
    goal_penalty_weight: float | None = None
    goal_tolerance: float | None = None
    relaxed_tolerance: float | None = None

    def __post_init__(self):
        if self.n_samples < 0:
            raise ValidationError("n_samples must be nonnegative")
        if self.burn_in < 0 or self.thinning < 1:
            raise ValidationError("burn_in must be >= 0 and thinning >= 1")
        if self.variant not in (ELLIPSOID, CONVEX, NONCONVEX):
            raise ValidationError(f"unknown sampler variant {self.variant!r}")
        lo, hi = self.beta_range
        if not (lo < 0.0 < hi):
            raise ValidationError("beta_range must straddle zero")
        if not self.min_interval > 0:
            raise ValidationError("min_interval must be positive")

    @property
    def max_backtrack(self) -> int:
        lo, hi = self.beta_range
        return int(math.ceil(math.log2((hi - lo) / self.min_interval))) + 1

    def resolve_task(self, task: Task) -> Task:
        kwargs = {}
        if self.goal_penalty_weight is not None:
            kwargs["goal_penalty_weight"] = self.goal_penalty_weight
        if self.goal_tolerance is not None:
            kwargs["goal_tolerance"] = self.goal_tolerance
        if self.relaxed_tolerance is not None:
            kwargs["relaxed_tolerance"] = self.relaxed_tolerance
        return replace(task, **kwargs) if kwargs else task


@dataclass
class SampleBatch:
    """Sampler output: admitted trajectories plus diagnostic counters."""

    samples: list[Trajectory]
    stats: dict
    window: tuple[int, int]
    level: float
    demo_cost: float
    # elapsed duration of each sample's perturbed segment (seconds for
    # continuous dynamics, steps otherwise)
    durations: list[float] = field(default_factory=list)


def ellipsoid_line_endpoints(xi: np.ndarray, r: np.ndarray, Vp: np.ndarray,
                             c_star: float) -> tuple[float, float]:
    """Chord endpoints of the line xi + beta r inside {x : x'Vp x = c_star}.

    Requires xi strictly inside the ellipsoid.  Directions in the null
    space of Vp leave the quadratic constant along the line and raise
    DegenerateDirectionError (resample the direction).
    """
    xi = np.asarray(xi, dtype=float)
    r = np.asarray(r, dtype=float)
    Vp = np.asarray(Vp, dtype=float)
    q = float(xi @ Vp @ xi)
    if q >= c_star:
        raise ValidationError(
            f"current point has quadratic value {q:.6g} >= level {c_star:.6g}"
        )
    Vr = Vp @ r
    a = float(r @ Vr)
    scale = float(np.abs(Vp).max()) * float(r @ r)
    if a <= 1e-14 * max(scale, 1e-300):
        raise DegenerateDirectionError("direction lies in the null space of the form")
    b = 2.0 * float(xi @ Vr)
    c = q - c_star
    disc = b * b - 4.0 * a * c
    sq = math.sqrt(max(disc, 0.0))
    return (-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)


def uniform_ellipsoid_samples(M: np.ndarray, level: float, x0: np.ndarray,
                              n_samples: int, seed: int, burn_in: int = 100,
                              thinning: int = 1) -> np.ndarray:
    """Raw hit-and-run states on {x : x'Mx <= level}; test/benchmark entry."""
    rng = seeding.generator(seed)
    d = M.shape[0]
    total = burn_in + n_samples * thinning
    dirs = rng.standard_normal((total, d))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    uniforms = rng.random(total)
    pts, _ = _backend.ellipsoid_chain(
        np.ascontiguousarray(M, dtype=float), np.asarray(x0, dtype=float),
        float(level), n_samples, burn_in, thinning, dirs, uniforms, 0.0,
    )
    return pts


def validate_demo(demo: Trajectory, task: Task, dynamics: DynamicsModel) -> None:
    """Check the demonstration against every known constraint."""
    if demo.n != dynamics.n or demo.m != dynamics.control_columns:
        raise ValidationError("demonstration dimensions disagree with the dynamics")
    if not np.all(dynamics.control_set.contains(demo.controls[:, : dynamics.m])):
        raise ValidationError("demonstration uses controls outside the admissible set")
    res, step = dynamics_residual(dynamics, demo)
    if res > dynamics.residual_tolerance():
        raise ValidationError(
            f"demonstration violates the dynamics at step {step} (residual {res:.3e})"
        )
    if float(np.max(np.abs(demo.states[0] - task.start))) > 1e-9:
        raise ValidationError("demonstration does not start at the task start state")
    err = task.goal_error(demo.states[-1])
    if err > task.goal_tolerance + 1e-12:
        raise ValidationError(
            f"demonstration terminal state misses the goal by {err:.3e}"
        )


def hit_and_run(demo: Trajectory, task: Task, cost: CostFunction,
                dynamics: DynamicsModel, cfg: SamplerConfig) -> SampleBatch:
    """Sample lower-cost trajectories consistent with the known constraints.

    Every emitted trajectory has goal-augmented cost strictly below the
    demonstration's, satisfies the dynamics, keeps all controls in the
    admissible set, and ends within the goal tolerance.  Deterministic
    given the config seed.
    """
    task = cfg.resolve_task(task)
    validate_demo(demo, task, dynamics)
    _check_variant(cfg.variant, cost, dynamics)
    rng = seeding.generator(cfg.seed, seeding.STREAM_SAMPLER)
    if cfg.n_samples == 0:
        return SampleBatch([], _fresh_stats(), (0, demo.T - 1),
                           augmented_cost(demo, cost, task), evaluate_cost(demo, cost))
    if cfg.variant == ELLIPSOID:
        return _sample_quadratic(demo, task, cost, dynamics, cfg, rng)
    if cfg.variant == CONVEX:
        return _sample_convex(demo, task, cost, dynamics, cfg, rng)
    return _sample_nonconvex(demo, task, cost, dynamics, cfg, rng)


def _check_variant(variant: str, cost: CostFunction, dynamics: DynamicsModel) -> None:
    if variant == ELLIPSOID:
        if dynamics.kind != DISCRETE_LINEAR or not cost.is_quadratic:
            raise ValidationError(
                "the ellipsoid variant needs discrete-linear dynamics and a "
                "quadratic cost; use convex or nonconvex instead"
            )
    elif variant == CONVEX:
        if dynamics.kind != DISCRETE_LINEAR:
            raise ValidationError(
                "the convex variant needs discrete-linear dynamics; use nonconvex"
            )
    elif variant == NONCONVEX and dynamics.kind == DISCRETE_LINEAR and cost.is_quadratic:
        # allowed, just slower; no error
        pass


def _fresh_stats() -> dict:
    return {
        "chain_steps": 0,
        "recorded": 0,
        "emitted": 0,
        "rejected_control": 0,
        "rejected_goal": 0,
        "rejected_cost": 0,
        "degenerate_directions": 0,
        "failed_steps": 0,
        "membership_evals": 0,
    }


# ---------------------------------------------------------------------------
# quadratic (ellipsoid) variant


def _walk_directions(rng, total: int, free: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    dim = free.shape[0]
    dirs = rng.standard_normal((total, dim))
    dirs[:, ~free] = 0.0
    norms = np.linalg.norm(dirs, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    dirs /= norms
    uniforms = rng.random(total)
    return dirs, uniforms


def run_quadratic_walk(walk: QuadraticWalkSpace, cfg: SamplerConfig, rng) -> tuple[np.ndarray, int]:
    total = cfg.burn_in + cfg.n_samples * cfg.thinning
    dirs, uniforms = _walk_directions(rng, total, walk.free)
    pts, n_degenerate = _backend.ellipsoid_chain(
        np.ascontiguousarray(walk.M, dtype=float), walk.start, walk.level,
        cfg.n_samples, cfg.burn_in, cfg.thinning, dirs, uniforms, 0.0,
    )
    return pts, n_degenerate


def _batch_plain_cost(states: np.ndarray, controls: np.ndarray, cost: CostFunction,
                      stacked: np.ndarray | None = None) -> np.ndarray:
    if cost.kind == CONTROL_EFFORT:
        return np.sum(controls**2, axis=(1, 2))
    if cost.kind == PATH_LENGTH_SQ:
        d = np.diff(states, axis=1)
        return np.sum(d**2, axis=(1, 2))
    if cost.kind == PATH_LENGTH:
        d = np.diff(states, axis=1)
        return np.sum(np.linalg.norm(d, axis=2), axis=1)
    if cost.kind == TOTAL_TIME:
        return np.sum(controls[:, :, -1], axis=1)
    return np.einsum("ij,jk,ik->i", stacked, cost.V, stacked)


def _emit_stacked(stacked: np.ndarray, walk: QuadraticWalkSpace, task: Task,
                  cost: CostFunction, dynamics: DynamicsModel, level: float,
                  stats: dict, dt=None) -> tuple[list[Trajectory], np.ndarray]:
    n, m, T = walk.n, walk.m, walk.horizon
    state_idx, control_idx = stacked_layout(n, m, T)
    states = stacked[:, state_idx.ravel()].reshape(-1, T, n)
    controls = stacked[:, control_idx.ravel()].reshape(-1, T - 1, m)

    if dynamics.control_set.kind == "box":
        box = dynamics.control_set.box
        ok_u = np.all((controls >= box.lo) & (controls <= box.hi), axis=(1, 2))
    else:
        ok_u = np.all(
            np.linalg.norm(controls, axis=2) <= dynamics.control_set.radius, axis=1
        )
    gd = task.goal_indices(n)
    goal = task.goal if task.goal.shape[0] == gd.shape[0] else task.goal[gd]
    goal_err = np.linalg.norm(states[:, -1, :][:, gd] - goal, axis=1)
    ok_goal = goal_err <= task.goal_tolerance
    cost_vals = _batch_plain_cost(states, controls, cost, stacked)
    aug = cost_vals + task.goal_penalty_weight * goal_err**2
    ok_cost = aug < level

    stats["rejected_control"] += int(np.sum(~ok_u))
    stats["rejected_goal"] += int(np.sum(ok_u & ~ok_goal))
    stats["rejected_cost"] += int(np.sum(ok_u & ok_goal & ~ok_cost))
    keep = ok_u & ok_goal & ok_cost
    out = [
        Trajectory(states[i], controls[i], dt=dt, cost_cache=float(cost_vals[i]))
        for i in np.nonzero(keep)[0]
    ]
    stats["emitted"] += len(out)
    return out, keep


def _sample_quadratic(demo, task, cost, dynamics, cfg, rng) -> SampleBatch:
    walk = full_horizon_walk(dynamics, cost, task, demo)
    stats = _fresh_stats()
    pts, n_deg = run_quadratic_walk(walk, cfg, rng)
    stats["degenerate_directions"] = n_deg
    stats["chain_steps"] = cfg.burn_in + cfg.n_samples * cfg.thinning
    stats["recorded"] = pts.shape[0]
    stacked = pts @ walk.to_stacked.T
    samples, _ = _emit_stacked(stacked, walk, task, cost, dynamics, walk.level, stats)
    return SampleBatch(
        samples, stats, (0, demo.T - 1), walk.level, evaluate_cost(demo, cost),
        durations=[float(demo.T - 1)] * len(samples),
    )


# ---------------------------------------------------------------------------
# convex variant (root-finding chord solve)


def _sample_convex(demo, task, cost, dynamics, cfg, rng) -> SampleBatch:
    walk = full_horizon_walk_convex(dynamics, cost, task, demo)
    stats = _fresh_stats()
    total = cfg.burn_in + cfg.n_samples * cfg.thinning
    dirs, uniforms = _walk_directions(rng, total, walk.free)
    pts = _convex_chain(walk, cost, task, total, cfg, dirs, uniforms, stats)
    rec = pts[cfg.burn_in :][cfg.thinning - 1 :: cfg.thinning]
    stats["chain_steps"] = total
    stats["recorded"] = rec.shape[0]
    stacked = rec @ walk.to_stacked.T
    samples, _ = _emit_stacked(stacked, walk, task, cost, dynamics, walk.level, stats)
    return SampleBatch(
        samples, stats, (0, demo.T - 1), walk.level, evaluate_cost(demo, cost),
        durations=[float(demo.T - 1)] * len(samples),
    )


def full_horizon_walk_convex(dynamics, cost, task, demo) -> QuadraticWalkSpace:
    """Walk space for general convex costs; M is unused (membership is
    evaluated through the cost function), the projector and pins are."""
    quad = CostFunction(kind=CONTROL_EFFORT)  # placeholder quadratic form
    walk = full_horizon_walk(dynamics, quad, task, demo)
    return replace(walk, level=augmented_cost(demo, cost, task))


def _augmented_of_stacked(stacked_row, walk, cost, task):
    state_idx, control_idx = stacked_layout(walk.n, walk.m, walk.horizon)
    states = stacked_row[state_idx.ravel()].reshape(walk.horizon, walk.n)
    controls = stacked_row[control_idx.ravel()].reshape(walk.horizon - 1, walk.m)
    gd = task.goal_indices(walk.n)
    goal = task.goal if task.goal.shape[0] == gd.shape[0] else task.goal[gd]
    err = float(np.linalg.norm(states[-1, gd] - goal))
    c = _batch_plain_cost(states[None], controls[None], cost, stacked_row[None])[0]
    return float(c) + task.goal_penalty_weight * err**2


def _convex_chain(walk, cost, task, total, cfg, dirs, uniforms, stats):
    x = walk.start.copy()
    Px = walk.to_stacked @ x
    out = np.empty((total, x.shape[0]))
    for k in range(total):
        r = dirs[k]
        Pr = walk.to_stacked @ r

        def g(beta):
            return _augmented_of_stacked(Px + beta * Pr, walk, cost, task) - walk.level

        lo, hi = _convex_chord(g, cfg)
        if lo is None:
            stats["degenerate_directions"] += 1
        else:
            beta = lo + uniforms[k] * (hi - lo)
            x = x + beta * r
            Px = Px + beta * Pr
        out[k] = x
    return out


def _convex_chord(g, cfg, expand_cap: int = 60):
    """Sub-level chord [lo, hi] around beta=0 of a convex g with g(0) <= 0."""
    g0 = g(0.0)
    if g0 > 0.0:
        return None, None

    def boundary(sign):
        step = abs(cfg.beta_range[1]) if sign > 0 else abs(cfg.beta_range[0])
        probe = sign * cfg.min_interval
        if g(probe) >= 0.0:
            return 0.0
        beta = sign * step
        for _ in range(expand_cap):
            if g(beta) >= 0.0:
                inner = probe if abs(beta) == step else beta / 2.0
                return brentq(g, inner, beta) if sign > 0 else brentq(g, beta, inner)
            beta *= 2.0
        raise ValidationError(
            "sub-level set appears unbounded along a sampled direction"
        )

    return boundary(-1.0), boundary(+1.0)


# ---------------------------------------------------------------------------
# non-convex variant (backtracking line search)


def _is_dubins(dynamics: DynamicsModel) -> bool:
    return (
        dynamics.kind == CONTINUOUS
        and dynamics.field_fn is dubins_field
        and dynamics.m == 1
    )


def _sample_nonconvex(demo, task, cost, dynamics, cfg, rng) -> SampleBatch:
    if dynamics.kind == CONTINUOUS:
        return sample_ct_segment(
            demo, task, cost, dynamics, cfg, rng,
            window=None, start_state=demo.states[0],
        )
    return _sample_nonconvex_discrete(demo, task, cost, dynamics, cfg, rng)


def backtracking_chain(z0, membership, total, cfg, dirs, uniforms, stats):
    """Generic backtracking hit-and-run; mirrors the compiled kernel."""
    z = np.array(z0, dtype=float)
    out = np.empty((total, z.shape[0]))
    lo0, hi0 = cfg.beta_range
    for i in range(total):
        lo, hi = lo0, hi0
        moved = False
        for j in range(cfg.max_backtrack):
            if hi - lo < cfg.min_interval:
                break
            beta = lo + uniforms[i, j] * (hi - lo)
            cand = z + beta * dirs[i]
            stats["membership_evals"] += 1
            if membership(cand):
                z = cand
                moved = True
                break
            if beta < 0.0:
                lo = beta
            else:
                hi = beta
        if not moved:
            stats["failed_steps"] += 1
        out[i] = z
    return out


def _sample_nonconvex_discrete(demo, task, cost, dynamics, cfg, rng) -> SampleBatch:
    """Walk over control sequences of a discrete (nonlinear) system."""
    T, m = demo.T, demo.m
    level = augmented_cost(demo, cost, task)
    gd = task.goal_indices(demo.n)
    goal = task.goal if task.goal.shape[0] == gd.shape[0] else task.goal[gd]
    eps_hat = task.relaxed_tolerance
    x0 = demo.states[0]

    def membership(z):
        controls = z.reshape(T - 1, m)
        if not np.all(dynamics.control_set.contains(controls)):
            return False
        states = np.empty((T, demo.n))
        states[0] = x0
        for t in range(T - 1):
            states[t + 1] = dynamics.step(states[t], controls[t])
        err = float(np.linalg.norm(states[-1, gd] - goal))
        if err > eps_hat:
            return False
        c = float(_batch_plain_cost(states[None], controls[None], cost)[0])
        return c + task.goal_penalty_weight * err**2 < level

    stats = _fresh_stats()
    total = cfg.burn_in + cfg.n_samples * cfg.thinning
    dirs = rng.standard_normal((total, (T - 1) * m))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    uniforms = rng.random((total, cfg.max_backtrack))
    pts = backtracking_chain(
        demo.controls.ravel(), membership, total, cfg, dirs, uniforms, stats
    )
    rec = pts[cfg.burn_in :][cfg.thinning - 1 :: cfg.thinning]
    stats["chain_steps"] = total
    stats["recorded"] = rec.shape[0]
    samples = []
    for row in rec:
        traj = rollout(dynamics, x0, row.reshape(T - 1, m))
        err = task.goal_error(traj.states[-1])
        c = evaluate_cost(traj, cost)
        if err > task.goal_tolerance:
            stats["rejected_goal"] += 1
            continue
        if not c + task.goal_penalty_weight * err**2 < level:
            stats["rejected_cost"] += 1
            continue
        samples.append(replace(traj, cost_cache=c))
    stats["emitted"] = len(samples)
    return SampleBatch(
        samples, stats, (0, T - 1), level, evaluate_cost(demo, cost),
        durations=[float(T - 1)] * len(samples),
    )


def segment_controls(controls: np.ndarray) -> np.ndarray:
    """Interleave (u..., duration) control rows into a flat walk vector."""
    return np.ascontiguousarray(controls, dtype=float).ravel()


def densify_ct_controls(controls: np.ndarray, dt: float) -> np.ndarray:
    """Split each (u, duration) row into integrator-step rows.

    Splitting uses the same substep count as the integrator, so dense
    re-integration reproduces the coarse rollout arithmetic exactly.
    """
    rows = []
    for row in controls:
        tau = row[-1]
        n_sub = max(1, int(math.ceil(tau / dt - 1e-12)))
        h = tau / n_sub
        dense = np.array(row, dtype=float)
        dense[-1] = h
        rows.extend([dense] * n_sub)
    return np.array(rows)


def sample_ct_segment(demo, task, cost, dynamics, cfg, rng, window, start_state):
    """Backtracking walk over a continuous-time (sub-)trajectory.

    window=None walks the whole horizon against the task goal with the
    relaxed/strict tolerance pair; window=(a, b) walks segments a..b-1
    against the demo waypoint at b in full state.
    """
    if cost.kind != TOTAL_TIME:
        raise ValidationError("continuous-time walks support the total-time cost")
    if window is None:
        a, b = 0, demo.T - 1
        gd = task.goal_indices(demo.n)
        goal = task.goal if task.goal.shape[0] == gd.shape[0] else task.goal[gd]
        eps, eps_hat = task.goal_tolerance, task.relaxed_tolerance
    else:
        a, b = window
        gd = np.arange(demo.n)
        goal = demo.states[b]
        eps, eps_hat = task.goal_tolerance, task.relaxed_tolerance
    seg = demo.controls[a:b]
    x0 = np.asarray(start_state, dtype=float)
    level = float(np.sum(seg[:, -1]))  # demo segment ends on target exactly
    alpha = task.goal_penalty_weight

    stats = _fresh_stats()
    total = cfg.burn_in + cfg.n_samples * cfg.thinning
    dim = seg.size
    dirs = rng.standard_normal((total, dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    uniforms = rng.random((total, cfg.max_backtrack))

    if _is_dubins(dynamics):
        u_max = float(dynamics.control_set.box.hi[0])
        rec, (moves, failed, evals) = _backend.ct_chain_dubins(
            segment_controls(seg), level, x0, np.asarray(goal, dtype=float),
            int(gd.shape[0]) if window is None else 3, alpha, eps_hat, u_max,
            dynamics.dt, _TAU_FLOOR, cfg.beta_range[0], cfg.beta_range[1],
            cfg.min_interval, cfg.max_backtrack, cfg.n_samples, cfg.burn_in,
            cfg.thinning, dirs, uniforms,
        )
        stats["failed_steps"] = failed
        stats["membership_evals"] = evals
    else:
        membership = _ct_membership(dynamics, gd, goal, eps_hat, alpha, level, x0)
        pts = backtracking_chain(
            segment_controls(seg), membership, total, cfg, dirs, uniforms, stats
        )
        rec = pts[cfg.burn_in :][cfg.thinning - 1 :: cfg.thinning]
    stats["chain_steps"] = total
    stats["recorded"] = rec.shape[0]

    samples = []
    durations = []
    K = seg.shape[0]
    for row in rec:
        controls = row.reshape(K, demo.m)
        if np.any(controls[:, -1] < _TAU_FLOOR):
            stats["rejected_control"] += 1
            continue
        if not np.all(dynamics.control_set.contains(controls[:, :-1])):
            stats["rejected_control"] += 1
            continue
        dense = densify_ct_controls(controls, dynamics.dt)
        seg_traj = rollout(dynamics, x0, dense)
        err = float(np.linalg.norm(seg_traj.states[-1, gd] - goal))
        if err > eps:
            stats["rejected_goal"] += 1
            continue
        seg_cost = float(np.sum(controls[:, -1]))
        if not seg_cost + alpha * err**2 < level:
            stats["rejected_cost"] += 1
            continue
        full = _splice_ct(demo, seg_traj, a, b, dynamics.dt)
        samples.append(full)
        durations.append(seg_cost)
    stats["emitted"] = len(samples)
    return SampleBatch(samples, stats, (a, b), level, float(np.sum(seg[:, -1])),
                       durations=durations)


def _ct_membership(dynamics, gd, goal, eps_hat, alpha, level, x0):
    m_cols = dynamics.control_columns

    def membership(z):
        controls = z.reshape(-1, m_cols)
        if np.any(controls[:, -1] < _TAU_FLOOR):
            return False
        if not np.all(dynamics.control_set.contains(controls[:, :-1])):
            return False
        total_time = float(np.sum(controls[:, -1]))
        if not total_time < level:
            return False
        x = np.array(x0, dtype=float)
        for row in controls:
            x = dynamics.step(x, row)
        err = float(np.linalg.norm(x[gd] - goal))
        if err > eps_hat:
            return False
        return total_time + alpha * err**2 < level

    return membership


def _splice_ct(demo: Trajectory, seg: Trajectory, a: int, b: int, dt) -> Trajectory:
    """Replace the demo's (a, b) window with the sampled segment.

    The junction waypoint keeps the demo's stored state; the sampled
    segment reconnects to it within the goal tolerance.
    """
    if a == 0 and b == demo.T - 1:
        c = evaluate_cost(seg, CostFunction(kind=TOTAL_TIME))
        return replace(seg, cost_cache=c)
    states = np.concatenate([demo.states[:a], seg.states[:-1], demo.states[b:]])
    controls = np.concatenate([demo.controls[:a], seg.controls, demo.controls[b:]])
    out = Trajectory(states, controls, dt=dt)
    return replace(out, cost_cache=evaluate_cost(out, CostFunction(kind=TOTAL_TIME)))
