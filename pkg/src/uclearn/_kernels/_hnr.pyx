# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: ellipsoid hit-and-run and the Dubins
backtracking chain.  Semantics must match _hnr_py exactly; both consume
the same pregenerated random streams."""

from libc.math cimport ceil, cos, sin, sqrt

import numpy as np

cimport numpy as cnp

NAME = "cython"

REFRESH = 1024

cdef int _REFRESH = 1024


def ellipsoid_chain(M, x0, double level, Py_ssize_t n_record, Py_ssize_t burn_in,
                    Py_ssize_t thinning, dirs, uniforms, double a_floor):
    cdef const double[:, ::1] Mv = np.ascontiguousarray(M, dtype=np.float64)
    cdef const double[:, ::1] dv = np.ascontiguousarray(dirs, dtype=np.float64)
    cdef const double[::1] uv = np.ascontiguousarray(uniforms, dtype=np.float64)
    cdef Py_ssize_t d = Mv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.array(x0, dtype=np.float64)
    cdef double[::1] xv = x
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n_record, d))
    cdef double[:, ::1] ov = out
    cdef cnp.ndarray[cnp.float64_t, ndim=1] Mx = np.empty(d)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] Mr = np.empty(d)
    cdef double[::1] Mxv = Mx
    cdef double[::1] Mrv = Mr
    cdef Py_ssize_t total = burn_in + n_record * thinning
    cdef Py_ssize_t k, i, j, rec = 0
    cdef long n_degenerate = 0
    cdef double q, a, b, c, disc, sq, beta_minus, beta_plus, beta, acc

    for i in range(d):
        acc = 0.0
        for j in range(d):
            acc += Mv[i, j] * xv[j]
        Mxv[i] = acc
    q = 0.0
    for i in range(d):
        q += xv[i] * Mxv[i]

    for k in range(total):
        if k % _REFRESH == 0 and k > 0:
            for i in range(d):
                acc = 0.0
                for j in range(d):
                    acc += Mv[i, j] * xv[j]
                Mxv[i] = acc
            q = 0.0
            for i in range(d):
                q += xv[i] * Mxv[i]
        for i in range(d):
            acc = 0.0
            for j in range(d):
                acc += Mv[i, j] * dv[k, j]
            Mrv[i] = acc
        a = 0.0
        for i in range(d):
            a += dv[k, i] * Mrv[i]
        if a <= a_floor:
            n_degenerate += 1
        else:
            b = 0.0
            for i in range(d):
                b += Mxv[i] * dv[k, i]
            b *= 2.0
            c = q - level
            if c > 0.0:
                c = 0.0
            disc = b * b - 4.0 * a * c
            if disc < 0.0:
                disc = 0.0
            sq = sqrt(disc)
            beta_minus = (-b - sq) / (2.0 * a)
            beta_plus = (-b + sq) / (2.0 * a)
            beta = beta_minus + uv[k] * (beta_plus - beta_minus)
            for i in range(d):
                xv[i] += beta * dv[k, i]
                Mxv[i] += beta * Mrv[i]
            q += beta * (b + beta * a)
        if k >= burn_in and (k - burn_in) % thinning == thinning - 1:
            for i in range(d):
                ov[rec, i] = xv[i]
            rec += 1
    return out, int(n_degenerate)


cdef bint _dubins_membership(double* z, Py_ssize_t K, double level,
                             double sx, double sy, double sth,
                             double gx, double gy, double gth, int g_dims,
                             double alpha_c, double eps_hat_sq,
                             double u_max, double dt_max, double tau_floor) noexcept nogil:
    cdef double total_time = 0.0
    cdef Py_ssize_t k, s, n_sub
    cdef double u, tau, h, x, y, th, thm, the
    for k in range(K):
        u = z[2 * k]
        tau = z[2 * k + 1]
        if tau < tau_floor or u < -u_max or u > u_max:
            return False
        total_time += tau
    if not total_time < level:
        return False
    x = sx
    y = sy
    th = sth
    for k in range(K):
        u = z[2 * k]
        tau = z[2 * k + 1]
        n_sub = <Py_ssize_t>ceil(tau / dt_max - 1e-12)
        if n_sub < 1:
            n_sub = 1
        h = tau / n_sub
        for s in range(n_sub):
            thm = th + 0.5 * h * u
            the = th + h * u
            x += (h / 6.0) * (cos(th) + 4.0 * cos(thm) + cos(the))
            y += (h / 6.0) * (sin(th) + 4.0 * sin(thm) + sin(the))
            th = the
    cdef double dxg = x - gx
    cdef double dyg = y - gy
    cdef double dist_sq = dxg * dxg + dyg * dyg
    cdef double dtg
    if g_dims == 3:
        dtg = th - gth
        dist_sq += dtg * dtg
    if dist_sq > eps_hat_sq:
        return False
    return total_time + alpha_c * dist_sq < level


def ct_chain_dubins(z0, double level, x0, goal, int g_dims, double alpha_c,
                    double eps_hat, double u_max,
                    double dt_max, double tau_floor, double beta_lo, double beta_hi,
                    double min_interval, Py_ssize_t max_backtrack,
                    Py_ssize_t n_record, Py_ssize_t burn_in, Py_ssize_t thinning,
                    dirs, uniforms):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] z = np.array(z0, dtype=np.float64)
    cdef double[::1] zv = z
    cdef const double[:, ::1] dv = np.ascontiguousarray(dirs, dtype=np.float64)
    cdef const double[:, ::1] uv = np.ascontiguousarray(uniforms, dtype=np.float64)
    cdef Py_ssize_t dim = z.shape[0]
    cdef Py_ssize_t K = dim // 2
    cdef const double[::1] x0v = np.ascontiguousarray(x0, dtype=np.float64)
    cdef const double[::1] gv = np.ascontiguousarray(goal, dtype=np.float64)
    cdef double sx = x0v[0], sy = x0v[1], sth = x0v[2]
    cdef double gx = gv[0], gy = gv[1]
    cdef double gth = gv[2] if gv.shape[0] > 2 else 0.0
    cdef double eps_hat_sq = eps_hat * eps_hat
    cdef Py_ssize_t total = burn_in + n_record * thinning
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n_record, dim))
    cdef double[:, ::1] ov = out
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cand = np.empty(dim)
    cdef double[::1] cv = cand
    cdef long moves = 0, failed = 0, evals = 0
    cdef Py_ssize_t i, j, t, rec = 0
    cdef double lo, hi, beta
    cdef bint moved

    for i in range(total):
        lo = beta_lo
        hi = beta_hi
        moved = False
        for j in range(max_backtrack):
            if hi - lo < min_interval:
                break
            beta = lo + uv[i, j] * (hi - lo)
            for t in range(dim):
                cv[t] = zv[t] + beta * dv[i, t]
            evals += 1
            if _dubins_membership(&cv[0], K, level, sx, sy, sth, gx, gy, gth,
                                  g_dims, alpha_c, eps_hat_sq, u_max, dt_max,
                                  tau_floor):
                for t in range(dim):
                    zv[t] = cv[t]
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
            for t in range(dim):
                ov[rec, t] = zv[t]
            rec += 1
    return out, (int(moves), int(failed), int(evals))
