"""Pure-Python fallback for the hot sampling kernels.

Mirrors the compiled extension operation for operation: identical
random-draw consumption, identical update formulas, identical refresh
cadence, so the two backends stay interchangeable.  Selected at import
time by uclearn._kernels when the extension is unavailable or when
UCLEARN_PURE_PYTHON is set.
"""

from __future__ import annotations

import math

import numpy as np

NAME = "python"

# Cadence at which the cached quadratic-form state is recomputed from
# scratch to stop round-off drift. Must match the compiled kernel.
REFRESH = 1024


def ellipsoid_chain(M, x0, level, n_record, burn_in, thinning, dirs, uniforms, a_floor):
    """Hit-and-run over {x : x' M x <= level}.

    dirs holds one unit direction per step (pinned coordinates zero);
    uniforms one chord draw per step.  Returns the recorded states and
    the count of degenerate (null-space) directions that were skipped.
    """
    M = np.ascontiguousarray(M, dtype=float)
    x = np.array(x0, dtype=float)
    total = burn_in + n_record * thinning
    out = np.empty((n_record, x.shape[0]))
    Mx = M @ x
    q = float(x @ Mx)
    n_degenerate = 0
    rec = 0
    for k in range(total):
        if k % REFRESH == 0 and k > 0:
            Mx = M @ x
            q = float(x @ Mx)
        r = dirs[k]
        Mr = M @ r
        a = float(r @ Mr)
        if a <= a_floor:
            n_degenerate += 1
        else:
            b = 2.0 * float(Mx @ r)
            c = q - level
            if c > 0.0:
                c = 0.0
            disc = b * b - 4.0 * a * c
            if disc < 0.0:
                disc = 0.0
            sq = math.sqrt(disc)
            beta_minus = (-b - sq) / (2.0 * a)
            beta_plus = (-b + sq) / (2.0 * a)
            beta = beta_minus + uniforms[k] * (beta_plus - beta_minus)
            x = x + beta * r
            Mx = Mx + beta * Mr
            q = q + beta * (b + beta * a)
        if k >= burn_in and (k - burn_in) % thinning == thinning - 1:
            out[rec] = x
            rec += 1
    return out, n_degenerate


def _dubins_membership(z, K, level, x0, goal, g_dims, alpha_c, eps_hat_sq,
                       u_max, dt_max, tau_floor):
    total_time = 0.0
    for k in range(K):
        u = z[2 * k]
        tau = z[2 * k + 1]
        if tau < tau_floor or u < -u_max or u > u_max:
            return False
        total_time += tau
    if not total_time < level:
        return False
    x = x0[0]
    y = x0[1]
    th = x0[2]
    for k in range(K):
        u = z[2 * k]
        tau = z[2 * k + 1]
        n_sub = int(math.ceil(tau / dt_max - 1e-12))
        if n_sub < 1:
            n_sub = 1
        h = tau / n_sub
        for _ in range(n_sub):
            # RK4; the heading rate is constant over the segment so the
            # two middle stages coincide
            thm = th + 0.5 * h * u
            the = th + h * u
            x += (h / 6.0) * (math.cos(th) + 4.0 * math.cos(thm) + math.cos(the))
            y += (h / 6.0) * (math.sin(th) + 4.0 * math.sin(thm) + math.sin(the))
            th = the
    dxg = x - goal[0]
    dyg = y - goal[1]
    dist_sq = dxg * dxg + dyg * dyg
    if g_dims == 3:
        dtg = th - goal[2]
        dist_sq += dtg * dtg
    if dist_sq > eps_hat_sq:
        return False
    return total_time + alpha_c * dist_sq < level


def ct_chain_dubins(z0, level, x0, goal, g_dims, alpha_c, eps_hat, u_max, dt_max,
                    tau_floor, beta_lo, beta_hi, min_interval, max_backtrack,
                    n_record, burn_in, thinning, dirs, uniforms):
    """Backtracking hit-and-run over Dubins piecewise-constant controls.

    z interleaves (turn rate, duration) per segment.  Membership requires
    positive durations, turn rates within bounds, the rollout endpoint
    within eps_hat of the goal over its first g_dims coordinates, and
    goal-penalized total time strictly below level.
    """
    z = np.array(z0, dtype=float)
    K = z.shape[0] // 2
    eps_hat_sq = eps_hat * eps_hat
    total = burn_in + n_record * thinning
    out = np.empty((n_record, z.shape[0]))
    moves = 0
    failed = 0
    evals = 0
    rec = 0
    for i in range(total):
        r = dirs[i]
        lo = beta_lo
        hi = beta_hi
        moved = False
        for j in range(max_backtrack):
            if hi - lo < min_interval:
                break
            beta = lo + uniforms[i, j] * (hi - lo)
            cand = z + beta * r
            evals += 1
            if _dubins_membership(cand, K, level, x0, goal, g_dims, alpha_c,
                                  eps_hat_sq, u_max, dt_max, tau_floor):
                z = cand
                moved = True
                break
            if beta < 0.0:
                lo = beta
            else:
                hi = beta
        if moved:
            moves += 1
        else:
            failed += 1
        if i >= burn_in and (i - burn_in) % thinning == thinning - 1:
            out[rec] = z
            rec += 1
    return out, (moves, failed, evals)
