"""Pure numpy implementations of the hot elementwise kernels.

Semantics must match onebit_mimo._kernels exactly; tests compare the two.
"""

from __future__ import annotations

import numpy as np

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def quantize_kernel(y: np.ndarray) -> np.ndarray:
    # sign(0) = +1 by convention; note -0.0 >= 0 is True, matching the C path.
    re = np.where(y.real >= 0.0, _INV_SQRT2, -_INV_SQRT2)
    im = np.where(y.imag >= 0.0, _INV_SQRT2, -_INV_SQRT2)
    return re + 1j * im


def asin_clipped_kernel(m: np.ndarray, tol: float) -> tuple[np.ndarray, float]:
    re = m.real
    im = m.imag
    mags = np.maximum(np.abs(re), np.abs(im))
    overshoot = float(max(mags.max(initial=0.0) - 1.0, 0.0))
    if overshoot > tol:
        # caller raises; entries are garbage beyond this point anyway
        return m.copy(), overshoot
    out = np.arcsin(np.clip(re, -1.0, 1.0)) + 1j * np.arcsin(np.clip(im, -1.0, 1.0))
    return out, overshoot
