"""Kernel selection: the compiled extension when it is importable, else
the pure-Python fallback. Set NDTLAB_PURE=1 to force the fallback."""

import os

import numpy as np

from ndtlab.core import binom

if os.environ.get("NDTLAB_PURE", "") not in ("", "0"):
    from ndtlab import _pykernels as kernels
    COMPILED = False
else:
    try:
        from ndtlab import _ckernels as kernels
        COMPILED = True
    except ImportError:
        from ndtlab import _pykernels as kernels
        COMPILED = False

BACKEND = "cython" if COMPILED else "python"


def tables(k_t: int, k_r: int):
    """Float DoF and binomial tables for the wireless kernels."""
    from ndtlab.core import _dof

    dof = np.ones((k_r, k_t + 1))
    for m in range(k_r):
        for t in range(1, k_t + 1):
            dof[m, t] = float(_dof(k_t, k_r, m, t))
    size = max(k_t, k_r) + 1
    comb = np.array([[float(binom(n, k)) for k in range(size)] for n in range(size)])
    return dof, comb


def wireless_bounds_float(k_t, k_r, mu_t, mu_r, r_w, tabs=None, backend=None):
    """(upper, lower) in floating point; ``backend`` may force a kernel module."""
    dof, comb = tables(k_t, k_r) if tabs is None else tabs
    mod = kernels if backend is None else backend
    return mod.wireless_bounds(k_t, k_r, float(mu_t), float(mu_r), float(r_w), dof, comb)
