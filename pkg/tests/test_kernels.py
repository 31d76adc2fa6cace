import os
import subprocess
import sys
from fractions import Fraction as F

import numpy as np
import pytest

from ndtlab import _pykernels, accel
from ndtlab.core import NetworkConfig
from ndtlab.wireless import ndt_wireless_lower, ndt_wireless_upper

try:
    from ndtlab import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")
GRID = [F(k, 5) for k in range(6)]


@pytest.mark.parametrize("k_t,k_r", [(2, 2), (3, 4), (5, 3), (6, 6)])
def test_python_kernel_matches_exact(k_t, k_r):
    tabs = accel.tables(k_t, k_r)
    for mu_t in GRID:
        for mu_r in GRID:
            for r_w in (F(1, 2), 1, 4):
                cfg = NetworkConfig.wireless(k_t, k_r, mu_t, mu_r, r_w)
                up, lo = _pykernels.wireless_bounds(k_t, k_r, float(mu_t), float(mu_r), float(r_w), *tabs)
                assert up == pytest.approx(float(ndt_wireless_upper(cfg)[0]), rel=1e-12, abs=1e-15)
                assert lo == pytest.approx(float(ndt_wireless_lower(cfg)[0]), rel=1e-12, abs=1e-15)


@needs_ext
@pytest.mark.parametrize("k_t,k_r", [(2, 2), (3, 4), (6, 5)])
def test_bounds_parity(k_t, k_r):
    tabs = accel.tables(k_t, k_r)
    for mu_t in GRID:
        for mu_r in GRID:
            for r_w in (0.0, 0.5, 3.0):
                args = (k_t, k_r, float(mu_t), float(mu_r), r_w, *tabs)
                assert _ckernels.wireless_bounds(*args) == pytest.approx(_pykernels.wireless_bounds(*args), rel=1e-13)


@needs_ext
def test_histogram_parity():
    rng = np.random.default_rng(3)
    ue = (rng.random((3, 5000)) < 0.4).astype(np.uint8)
    en = (rng.random((4, 5000)) < 0.6).astype(np.uint8)
    a = _ckernels.cell_histogram(ue, en)
    b = _pykernels.cell_histogram(ue, en)
    assert np.array_equal(np.asarray(a), np.asarray(b))
    assert np.asarray(a).sum() == 5000 and np.asarray(a).shape == (4, 5)


def test_histogram_counts():
    ue = np.array([[1, 0, 1], [1, 0, 0]], dtype=np.uint8)
    en = np.array([[0, 0, 1]], dtype=np.uint8)
    h = np.asarray(_pykernels.cell_histogram(ue, en))
    assert h.tolist() == [[1, 0], [0, 1], [1, 0]]


def test_zero_rate_signal():
    tabs = accel.tables(2, 2)
    up, lo = _pykernels.wireless_bounds(2, 2, 0.0, 0.0, 0.0, *tabs)
    assert up == float("inf") and lo == 0.0


def test_backend_flag():
    assert accel.BACKEND in ("cython", "python")
    assert accel.COMPILED == (accel.BACKEND == "cython")


def test_pure_env_forces_fallback():
    env = dict(os.environ, NDTLAB_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from ndtlab import accel; print(accel.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
