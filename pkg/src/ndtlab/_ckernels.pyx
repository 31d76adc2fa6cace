# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled float kernels. Same signatures and results as ``_pykernels``."""

from libc.math cimport INFINITY, pow

import numpy as np


def wireless_bounds(int k_t, int k_r, double mu_t, double mu_r, double r_w,
                    double[:, ::1] dof, double[:, ::1] comb):
    """(upper, lower) of the wireless-fronthaul bounds in double precision.

    ``dof[m, t]`` holds d_{m,t} for t >= 1; ``comb[n, k]`` holds C(n, k).
    """
    cdef int m, n, i
    cdef double f, share, fr, ac, tot, best, upper = 0.0, lower1 = 0.0, lower2 = 0.0, v
    for m in range(k_r):
        for n in range(k_t + 1):
            f = (pow(mu_r, m) * pow(1.0 - mu_r, k_r - m)
                 * pow(mu_t, n) * pow(1.0 - mu_t, k_t - n))
            if f == 0.0:
                continue
            if n == 0:
                if r_w == 0.0:
                    return INFINITY, 0.0
                upper += comb[k_r, m + 1] * f / r_w + comb[k_r - 1, m] * f / dof[m, k_t]
                continue
            best = INFINITY
            for i in range(k_t - n + 1):
                ac = comb[k_r - 1, m] * comb[k_t, n] * f / dof[m, n + i]
                if i == 0:
                    fr = 0.0
                elif r_w == 0.0:
                    continue
                else:
                    share = i / (n + 1.0)
                    if share > 1.0:
                        share = 1.0
                    fr = comb[k_r, m + 1] * comb[k_t, n] * share * f / r_w
                tot = fr + ac
                if tot < best:
                    best = tot
            upper += best
    if r_w > 0.0:
        for i in range(1, k_r + 1):
            v = i * pow(1.0 - mu_t, k_t) * pow(1.0 - mu_r, i) / r_w
            if v > lower1:
                lower1 = v
    for i in range(1, k_r + 1):
        v = i * pow(1.0 - mu_r, i) / (i if i < k_t else k_t)
        if v > lower2:
            lower2 = v
    return upper, lower1 + lower2


def cell_histogram(unsigned char[:, ::1] ue_mask, unsigned char[:, ::1] en_mask):
    """Count bits by (number of UEs caching, number of ENs caching)."""
    cdef Py_ssize_t k_r = ue_mask.shape[0], k_t = en_mask.shape[0]
    cdef Py_ssize_t bits = ue_mask.shape[1], b, p
    cdef int r, t
    out = np.zeros((k_r + 1, k_t + 1), dtype=np.int64)
    cdef long long[:, ::1] hist = out
    for b in range(bits):
        r = 0
        for p in range(k_r):
            r += ue_mask[p, b]
        t = 0
        for p in range(k_t):
            t += en_mask[p, b]
        hist[r, t] += 1
    return out
