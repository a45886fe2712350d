"""Sub-trajectory sampling: perturb a window of a demonstration.

Holding the rest of the demonstration fixed localizes the unsafeness
evidence to the perturbed waypoints, shrinking the version space far
faster than full-horizon samples.  Sampling directly in the window's
own space is sound only for strictly monotone costs: a cheaper window
then implies a cheaper full trajectory.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .. import seeding
from ..core.costs import TOTAL_TIME, CostFunction, evaluate_cost
from ..core.dynamics import CONTINUOUS, DISCRETE_LINEAR, DynamicsModel
from ..core.trajectory import Task, Trajectory
from ..errors import ValidationError
from .consistency import stacked_layout, window_walk
from .hitandrun import (
    SampleBatch,
    SamplerConfig,
    _batch_plain_cost,
    _fresh_stats,
    hit_and_run,
    run_quadratic_walk,
    sample_ct_segment,
)


def enumerate_windows(T: int, spec) -> list[tuple[int, int]]:
    """Expand a window specification into (a, b) waypoint-index pairs.

    spec is 'full', 'all3' (every 3-waypoint window plus the full
    horizon), an explicit (a, b) pair, a window length as an int, or a
    list of any of these.
    """
    if isinstance(spec, (list, tuple)) and spec and isinstance(spec[0], (list, tuple, str, int)):
        out: list[tuple[int, int]] = []
        for s in spec:
            out.extend(enumerate_windows(T, s))
        return out
    if spec == "full":
        return [(0, T - 1)]
    if spec == "all3":
        return [(a, a + 2) for a in range(T - 2)] + [(0, T - 1)]
    if isinstance(spec, int):
        length = spec
        if length < 2:
            raise ValidationError("window length must be at least 2 waypoints")
        return [(a, a + length - 1) for a in range(T - length + 1)]
    if isinstance(spec, (tuple, list)) and len(spec) == 2:
        return [(int(spec[0]), int(spec[1]))]
    raise ValidationError(f"unknown window spec {spec!r}")


def sample_subtrajectories(demo: Trajectory, window: tuple[int, int], task: Task,
                           cost: CostFunction, dynamics: DynamicsModel,
                           cfg: SamplerConfig) -> SampleBatch:
    """Sample lower-cost replacements for the demo's (a, b) window.

    Returned trajectories are full length and differ from the demo only
    at waypoints strictly inside the window; each has strictly lower
    window cost, hence strictly lower full cost by monotonicity.
    """
    a, b = window
    if not (0 <= a < b <= demo.T - 1):
        raise ValidationError(f"bad window ({a}, {b}) for horizon {demo.T}")
    if not cost.strictly_monotone:
        raise ValidationError(
            "sub-trajectory sampling in the window space needs a strictly "
            "monotone cost; sample the full space with fixed waypoints instead"
        )
    if (a, b) == (0, demo.T - 1):
        return hit_and_run(demo, task, cost, dynamics, cfg)
    if b - a < 2:
        level = evaluate_cost(demo.subsegment(a, b), cost)
        return SampleBatch([], _fresh_stats(), window, level, level)
    task = cfg.resolve_task(task)
    if dynamics.kind == CONTINUOUS:
        rng = seeding.generator(cfg.seed, seeding.STREAM_SAMPLER)
        return sample_ct_segment(
            demo, task, cost, dynamics, cfg, rng,
            window=(a, b), start_state=demo.states[a],
        )
    if dynamics.kind == DISCRETE_LINEAR and cost.is_quadratic:
        return _sample_window_quadratic(demo, (a, b), task, cost, dynamics, cfg)
    raise ValidationError(
        "window sampling supports quadratic costs on linear dynamics and "
        "total-time costs on continuous dynamics"
    )


def _sample_window_quadratic(demo, window, task, cost, dynamics, cfg) -> SampleBatch:
    a, b = window
    walk = window_walk(dynamics, cost, demo, a, b)
    rng = seeding.generator(cfg.seed, seeding.STREAM_SAMPLER)
    stats = _fresh_stats()
    if cfg.n_samples == 0:
        return SampleBatch([], stats, window, walk.level, walk.level)
    pts, n_deg = run_quadratic_walk(walk, cfg, rng)
    stats["degenerate_directions"] = n_deg
    stats["chain_steps"] = cfg.burn_in + cfg.n_samples * cfg.thinning
    stats["recorded"] = pts.shape[0]

    stacked = pts @ walk.to_stacked.T
    n, m, Ts = walk.n, walk.m, walk.horizon
    state_idx, control_idx = stacked_layout(n, m, Ts)
    states = stacked[:, state_idx.ravel()].reshape(-1, Ts, n)
    controls = stacked[:, control_idx.ravel()].reshape(-1, Ts - 1, m)

    if dynamics.control_set.kind == "box":
        box = dynamics.control_set.box
        ok_u = np.all((controls >= box.lo) & (controls <= box.hi), axis=(1, 2))
    else:
        ok_u = np.all(
            np.linalg.norm(controls, axis=2) <= dynamics.control_set.radius, axis=1
        )
    seg_cost = _batch_plain_cost(states, controls, cost, stacked)
    ok_cost = seg_cost < walk.level
    stats["rejected_control"] += int(np.sum(~ok_u))
    stats["rejected_cost"] += int(np.sum(ok_u & ~ok_cost))
    keep = ok_u & ok_cost

    demo_cost = evaluate_cost(demo, cost)
    samples = []
    for i in np.nonzero(keep)[0]:
        full_states = demo.states.copy()
        full_states[a + 1 : b] = states[i][1:-1]
        full_controls = demo.controls.copy()
        full_controls[a:b] = controls[i]
        traj = Trajectory(full_states, full_controls, dt=demo.dt)
        c = evaluate_cost(traj, cost)
        if not c < demo_cost:  # cannot occur for additive stage costs
            stats["rejected_cost"] += 1
            continue
        samples.append(replace(traj, cost_cache=c))
    stats["emitted"] = len(samples)
    return SampleBatch(
        samples, stats, window, walk.level, walk.level,
        durations=[float(b - a)] * len(samples),
    )
