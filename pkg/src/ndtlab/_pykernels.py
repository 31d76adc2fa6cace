"""Pure-Python versions of the compiled kernels."""

import math

import numpy as np


def wireless_bounds(k_t, k_r, mu_t, mu_r, r_w, dof, comb):
    upper = 0.0
    for m in range(k_r):
        for n in range(k_t + 1):
            f = mu_r ** m * (1.0 - mu_r) ** (k_r - m) * mu_t ** n * (1.0 - mu_t) ** (k_t - n)
            if f == 0.0:
                continue
            if n == 0:
                if r_w == 0.0:
                    return math.inf, 0.0
                upper += comb[k_r][m + 1] * f / r_w + comb[k_r - 1][m] * f / dof[m][k_t]
                continue
            best = math.inf
            for i in range(k_t - n + 1):
                ac = comb[k_r - 1][m] * comb[k_t][n] * f / dof[m][n + i]
                if i == 0:
                    fr = 0.0
                elif r_w == 0.0:
                    continue
                else:
                    fr = comb[k_r][m + 1] * comb[k_t][n] * min(1.0, i / (n + 1.0)) * f / r_w
                best = min(best, fr + ac)
            upper += best
    lower1 = 0.0
    if r_w > 0.0:
        lower1 = max(l * (1.0 - mu_t) ** k_t * (1.0 - mu_r) ** l / r_w for l in range(1, k_r + 1))
    lower2 = max(l * (1.0 - mu_r) ** l / min(l, k_t) for l in range(1, k_r + 1))
    return upper, lower1 + lower2


def cell_histogram(ue_mask, en_mask):
    k_r, k_t = ue_mask.shape[0], en_mask.shape[0]
    r = ue_mask.sum(axis=0, dtype=np.int64)
    t = en_mask.sum(axis=0, dtype=np.int64)
    counts = np.bincount(r * (k_t + 1) + t, minlength=(k_r + 1) * (k_t + 1))
    return counts.reshape(k_r + 1, k_t + 1)
