# cython: language_level=3
"""Compiled force kernels: pairwise overlap repulsion, edge attraction,
the damped settle loop and undamped overlap-resolution passes.

Semantics mirror semcloud.kernels._ref; positions are (n, 2) float64 box
centers, extents are half-widths/half-heights.
"""

import numpy as np

cimport cython
cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


@cython.boundscheck(False)
@cython.wraparound(False)
cdef void _accumulate_repulsion(double[:, ::1] pos,
                                double[::1] half_w,
                                double[::1] half_h,
                                double[:, ::1] disp) nogil:
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t i, j
    cdef double dx, dy, x_ov, y_ov, push, s
    for i in range(n):
        for j in range(i + 1, n):
            dx = pos[j, 0] - pos[i, 0]
            dy = pos[j, 1] - pos[i, 1]
            x_ov = half_w[i] + half_w[j] - (dx if dx >= 0 else -dx)
            if x_ov <= 0:
                continue
            y_ov = half_h[i] + half_h[j] - (dy if dy >= 0 else -dy)
            if y_ov <= 0:
                continue
            if dx == 0 and dy == 0:
                # coincident centers: horizontal push, sign by ordinal
                push = x_ov * 0.5
                disp[i, 0] -= push
                disp[j, 0] += push
            elif x_ov > y_ov:
                push = y_ov * 0.5
                s = 1.0 if dy > 0 else (-1.0 if dy < 0 else 1.0)
                disp[i, 1] -= s * push
                disp[j, 1] += s * push
            else:
                push = x_ov * 0.5
                s = 1.0 if dx > 0 else (-1.0 if dx < 0 else 1.0)
                disp[i, 0] -= s * push
                disp[j, 0] += s * push


@cython.boundscheck(False)
@cython.wraparound(False)
cdef void _accumulate_attraction(double[:, ::1] pos,
                                 int[::1] eu, int[::1] ev, double[::1] ew,
                                 double attraction_gain,
                                 double centering_gain,
                                 double[:, ::1] disp) nogil:
    cdef Py_ssize_t m = eu.shape[0]
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t k, i
    cdef int u, v
    cdef double fx, fy
    for k in range(m):
        u = eu[k]
        v = ev[k]
        fx = (pos[v, 0] - pos[u, 0]) * ew[k] * attraction_gain
        fy = (pos[v, 1] - pos[u, 1]) * ew[k] * attraction_gain
        disp[u, 0] += fx
        disp[u, 1] += fy
        disp[v, 0] -= fx
        disp[v, 1] -= fy
    for i in range(n):
        disp[i, 0] -= pos[i, 0] * centering_gain
        disp[i, 1] -= pos[i, 1] * centering_gain


@cython.boundscheck(False)
@cython.wraparound(False)
cdef double _max_overlap_depth(double[:, ::1] pos,
                               double[::1] half_w,
                               double[::1] half_h) nogil:
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t i, j
    cdef double dx, dy, x_ov, y_ov, depth, worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            dx = pos[j, 0] - pos[i, 0]
            dy = pos[j, 1] - pos[i, 1]
            x_ov = half_w[i] + half_w[j] - (dx if dx >= 0 else -dx)
            if x_ov <= 0:
                continue
            y_ov = half_h[i] + half_h[j] - (dy if dy >= 0 else -dy)
            if y_ov <= 0:
                continue
            depth = x_ov if x_ov < y_ov else y_ov
            if depth > worst:
                worst = depth
    return worst


def repulsion(pos, half_w, half_h):
    """Per-term overlap-resolving displacement vectors."""
    disp = np.zeros_like(pos)
    _accumulate_repulsion(pos, half_w, half_h, disp)
    return disp


def attraction(pos, eu, ev, ew, double attraction_gain, double centering_gain):
    """Per-term edge-attraction plus canvas-centering displacement vectors."""
    disp = np.zeros_like(pos)
    _accumulate_attraction(pos, eu, ev, ew, attraction_gain, centering_gain, disp)
    return disp


def max_overlap_depth(pos, half_w, half_h):
    """Largest min-axis overlap over all box pairs (0 when overlap-free)."""
    return _max_overlap_depth(pos, half_w, half_h)


@cython.boundscheck(False)
@cython.wraparound(False)
def settle_loop(double[:, ::1] pos, double[::1] half_w, double[::1] half_h,
                int[::1] eu, int[::1] ev, double[::1] ew,
                int iterations, double attraction_gain, double centering_gain,
                double cap):
    """Run the damped force loop in place: alpha_t = 1 - t/iterations."""
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t i
    cdef int t
    cdef double alpha, norm, scale
    disp_arr = np.zeros((n, 2), dtype=np.float64)
    cdef double[:, ::1] disp = disp_arr
    for t in range(iterations):
        alpha = 1.0 - (<double> t) / (<double> iterations)
        disp[:, :] = 0.0
        with nogil:
            _accumulate_repulsion(pos, half_w, half_h, disp)
            _accumulate_attraction(pos, eu, ev, ew, attraction_gain,
                                   centering_gain, disp)
            for i in range(n):
                disp[i, 0] *= alpha
                disp[i, 1] *= alpha
                norm = (disp[i, 0] * disp[i, 0] + disp[i, 1] * disp[i, 1]) ** 0.5
                if norm > cap and norm > 0:
                    scale = cap / norm
                    disp[i, 0] *= scale
                    disp[i, 1] *= scale
                pos[i, 0] += disp[i, 0]
                pos[i, 1] += disp[i, 1]


@cython.boundscheck(False)
@cython.wraparound(False)
cdef void _resolution_sweep(double[:, ::1] pos,
                            double[::1] half_w,
                            double[::1] half_h,
                            Py_ssize_t pinned) nogil:
    # sequential (Gauss-Seidel) pair resolution: each pair sees positions
    # already updated by earlier pairs in the sweep, which avoids the
    # oscillation of simultaneous full-strength pushes
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t i, j
    cdef double dx, dy, x_ov, y_ov, push, s
    cdef int axis
    for i in range(n):
        for j in range(i + 1, n):
            dx = pos[j, 0] - pos[i, 0]
            dy = pos[j, 1] - pos[i, 1]
            x_ov = half_w[i] + half_w[j] - (dx if dx >= 0 else -dx)
            if x_ov <= 0:
                continue
            y_ov = half_h[i] + half_h[j] - (dy if dy >= 0 else -dy)
            if y_ov <= 0:
                continue
            if dx == 0 and dy == 0:
                axis = 0
                push = x_ov
                s = 1.0
            elif x_ov > y_ov:
                axis = 1
                push = y_ov
                s = 1.0 if dy > 0 else (-1.0 if dy < 0 else 1.0)
            else:
                axis = 0
                push = x_ov
                s = 1.0 if dx > 0 else (-1.0 if dx < 0 else 1.0)
            if i == pinned:
                # transfer the full push to the free partner
                pos[j, axis] += s * push
            elif j == pinned:
                pos[i, axis] -= s * push
            else:
                pos[i, axis] -= s * push * 0.5
                pos[j, axis] += s * push * 0.5


def resolve_overlaps(double[:, ::1] pos, double[::1] half_w, double[::1] half_h,
                     double tolerance, int max_passes, int pinned=-1):
    """Undamped repulsion-only sweeps until max overlap depth <= tolerance.

    Returns the number of sweeps used, or -1 when the budget is exhausted.
    The pinned vertex (if any) never moves.
    """
    cdef int p
    if _max_overlap_depth(pos, half_w, half_h) <= tolerance:
        return 0
    for p in range(max_passes):
        with nogil:
            _resolution_sweep(pos, half_w, half_h, pinned)
        if _max_overlap_depth(pos, half_w, half_h) <= tolerance:
            return p + 1
    return -1
