"""Kernel backend selection.

The two elementwise hot spots of the simulator (one-bit quantization and
the arcsine transform that feeds quantization-noise covariances) exist in
two interchangeable implementations:

* ``onebit_mimo._kernels`` -- compiled Cython extension,
* ``onebit_mimo._kernels_py`` -- pure numpy fallback.

The compiled one is picked at import time when present. Set
``ONEBIT_MIMO_BACKEND=python`` (or ``cython``) to force a choice;
forcing ``cython`` raises if the extension was not built.

Matrix products are delegated to numpy/BLAS in both cases.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

_FORCED = os.environ.get("ONEBIT_MIMO_BACKEND", "").strip().lower()

if _FORCED == "python":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _FORCED == "cython":
            raise ImportError(
                "ONEBIT_MIMO_BACKEND=cython but the compiled extension is "
                "missing; reinstall with the Cython toolchain available"
            )
        _impl = _kernels_py
        BACKEND = "python"


def active_backend() -> str:
    """Name of the kernel implementation selected at import."""
    return BACKEND


def quantize_kernel(y: np.ndarray) -> np.ndarray:
    """Elementwise one-bit quantization; see system_model.quantize."""
    return _impl.quantize_kernel(np.ascontiguousarray(y, dtype=np.complex128))


def asin_clipped(m: np.ndarray, tol: float) -> np.ndarray:
    """Elementwise arcsin on real/imag parts with bounded clipping."""
    out, overshoot = _impl.asin_clipped_kernel(
        np.ascontiguousarray(m, dtype=np.complex128), tol
    )
    if overshoot > tol:
        raise ValueError(
            f"arcsine input exceeds [-1, 1] by {overshoot:.3e} (> {tol:.0e}); "
            "covariance construction is broken upstream"
        )
    return out
