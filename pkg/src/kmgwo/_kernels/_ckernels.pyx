# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
from libc.math cimport fabs


def gwo_sweep(const double[:, ::1] positions, const double[:, ::1] leaders, double a,
              const double[:, :, ::1] draws, const double[::1] lower, const double[::1] upper):
    cdef Py_ssize_t n = positions.shape[0]
    cdef Py_ssize_t d = positions.shape[1]
    cdef Py_ssize_t i, j, m
    cdef double x, lead, A, C, dist, acc, v
    cdef double moved[3]
    out = np.empty((n, d), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double two_a = 2.0 * a
    for i in range(n):
        for j in range(d):
            x = positions[i, j]
            for m in range(3):
                lead = leaders[m, j]
                A = two_a * draws[i, j, 2 * m] - a
                C = 2.0 * draws[i, j, 2 * m + 1]
                dist = fabs(C * lead - x)
                moved[m] = lead - A * dist
            acc = moved[0] + moved[1]
            acc = acc + moved[2]
            v = acc / 3.0
            if v < lower[j]:
                v = lower[j]
            if v > upper[j]:
                v = upper[j]
            o[i, j] = v
    return out


def lennard_jones(const double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t k = X.shape[1] // 3
    cdef Py_ssize_t r, i, j, p, q
    cdef double xd, yd, zd, ed, ud, s
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for r in range(n):
        s = 0.0
        for i in range(k - 1):
            for j in range(i + 1, k):
                p = 3 * i
                q = 3 * j
                xd = X[r, p] - X[r, q]
                yd = X[r, p + 1] - X[r, q + 1]
                zd = X[r, p + 2] - X[r, q + 2]
                ed = xd * xd + yd * yd + zd * zd
                ud = ed * ed * ed
                if ud > 1.0e-10:
                    s += (1.0 / ud - 2.0) / ud
                else:
                    s += 1.0e20
        o[r] = s
    return out


def chebyshev(const double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t r, i, j
    cdef double a = 1.0, b = 1.2, dx = 1.2, dy, y, px, s, dev
    cdef Py_ssize_t sample = 32 * d
    for j in range(d - 2):
        dx = 2.4 * b - a
        a = b
        b = dx
    dy = 2.0 / sample
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for r in range(n):
        s = 0.0
        for i in range(sample + 1):
            y = -1.0 + dy * i
            px = X[r, 0]
            for j in range(1, d):
                px = y * px + X[r, j]
            if px < -1.0 or px > 1.0:
                dev = 1.0 - fabs(px)
                s += dev * dev
        px = X[r, 0]
        for j in range(1, d):
            px = 1.2 * px + X[r, j]
        if px < dx:
            s += 2.0 * (px * px)
        o[r] = s
    return out
