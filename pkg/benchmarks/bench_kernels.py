"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Times the float wireless-bounds kernel over the gap-audit grid and the
placement histogram on a Monte Carlo sized input, for every backend that
can be imported.
"""

import argparse
import time
from fractions import Fraction

import numpy as np

from ndtlab import _pykernels, accel


def backends():
    out = {"python": _pykernels}
    try:
        from ndtlab import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out


def bench_bounds(mod):
    mus = [Fraction(k, 10) for k in range(11)]
    n = 0
    for k_t in range(2, 7):
        for k_r in range(2, 7):
            tabs = accel.tables(k_t, k_r)
            for mu_t in mus:
                for mu_r in mus:
                    for rw in (0.5, 1, 2, 4, 8):
                        accel.wireless_bounds_float(k_t, k_r, mu_t, mu_r, rw, tabs, backend=mod)
                        n += 1
    return n


def bench_histogram(mod, bits=10**6, seed=0):
    rng = np.random.default_rng(seed)
    ue = (rng.random((4, bits)) < 0.5).astype(np.uint8)
    en = (rng.random((4, bits)) < 0.5).astype(np.uint8)
    return int(mod.cell_histogram(ue, en).sum())


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = backends()
    results = {}
    for name, mod in mods.items():
        results[name] = (timed(lambda: bench_bounds(mod), args.repeat),
                         timed(lambda: bench_histogram(mod), args.repeat))
    print(f"{'backend':8s} {'bounds (15125 pts)':>20s} {'histogram (4+4 x 1e6)':>24s}")
    for name, (b, h) in results.items():
        print(f"{name:8s} {b:19.3f}s {h:23.3f}s")
    if "cython" in results:
        (pb, ph), (cb, ch) = results["python"], results["cython"]
        print(f"speedup  {pb / cb:19.1f}x {ph / ch:23.1f}x")
    else:
        print("compiled extension not available; only the fallback was timed")


if __name__ == "__main__":
    main()
