"""Benchmark the compiled kernels against the numpy fallback.

Times the two elementwise hot spots (one-bit quantization, clipped arcsin)
on sweep-sized blocks, plus one end-to-end Monte Carlo rate cell per
backend via a subprocess so the import-time selection is exercised.

Run:  python benchmarks/bench_backends.py
"""

from __future__ import annotations

import os
import subprocess
import sys
import timeit

import numpy as np

import onebit_mimo._kernels_py as kernels_py

try:
    import onebit_mimo._kernels as kernels_cy
except ImportError:
    kernels_cy = None


def bench(fn, *args, repeat=5, number=20) -> float:
    """Best-of wall time per call, seconds."""
    timer = timeit.Timer(lambda: fn(*args))
    return min(timer.repeat(repeat=repeat, number=number)) / number


def fmt_row(name, t_py, t_cy):
    speedup = f"{t_py / t_cy:5.1f}x" if t_cy else "    -"
    cy = f"{t_cy * 1e6:10.1f}" if t_cy else "         -"
    print(f"{name:<38} {t_py * 1e6:10.1f} {cy} {speedup}")


def main() -> None:
    rng = np.random.default_rng(0)
    print(f"{'kernel':<38} {'numpy (us)':>10} {'cython (us)':>10} {'speedup':>6}")

    for m, tau in ((128, 8), (128, 128), (512, 512)):
        y = np.ascontiguousarray(
            rng.standard_normal((m, tau)) + 1j * rng.standard_normal((m, tau))
        )
        t_py = bench(kernels_py.quantize_kernel, y)
        t_cy = bench(kernels_cy.quantize_kernel, y) if kernels_cy else None
        fmt_row(f"quantize {m}x{tau}", t_py, t_cy)

    for n in (128, 512):
        sigma = rng.uniform(-0.99, 0.99, (n, n)) + 1j * rng.uniform(-0.99, 0.99, (n, n))
        sigma = np.ascontiguousarray(sigma)
        t_py = bench(kernels_py.asin_clipped_kernel, sigma, 1e-9)
        t_cy = bench(kernels_cy.asin_clipped_kernel, sigma, 1e-9) if kernels_cy else None
        fmt_row(f"asin_clipped {n}x{n}", t_py, t_cy)

    print()
    cell = (
        "import time, onebit_mimo as om;"
        "cfg = om.SystemConfig(M=128, K=8, tau=8, rho_p=1.0, rho_d=1.0, master_seed=0);"
        "t0 = time.perf_counter(); om.ergodic_rate_mc(cfg, 300);"
        "print(f'{om.active_backend():>7}: {time.perf_counter() - t0:.3f} s')"
    )
    print("rate cell, M=128, K=8, 300 trials (subprocess per backend):", flush=True)
    for forced in ("cython", "python") if kernels_cy else ("python",):
        env = dict(os.environ, ONEBIT_MIMO_BACKEND=forced)
        subprocess.run([sys.executable, "-c", cell], env=env, check=True)


if __name__ == "__main__":
    main()
