"""Linearization of the one-bit quantizer for Gaussian inputs.

For a circularly-symmetric Gaussian input the quantizer output can be
written r = alpha * y + q with q uncorrelated with y. The scalar gain

    alpha = sqrt( 2 / (pi * (1 + K * rho)) )

is the distortion-minimizing choice when the input covariance is
(K*rho + 1) * I, which holds in both the training and data phases here.
The covariance of the quantized signal follows the arcsine law applied
separately to the real and imaginary parts of the normalized input
covariance, which reduces to the identity matrix when the input entries
are uncorrelated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .numerics import elementwise_asin_clipped, hermitian

__all__ = [
    "Phase",
    "BussgangGain",
    "bussgang_alpha",
    "arcsine_covariance",
    "quant_noise_cov",
    "decomposition_residual",
]

Phase = Literal["pilot", "data"]

_ALPHA_MAX = np.sqrt(2.0 / np.pi)
_HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class BussgangGain:
    """Scalar linearization gain for one phase (pilot or data)."""

    alpha: float
    phase: Phase

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= _ALPHA_MAX * (1.0 + 1e-15):
            raise ValueError(
                f"alpha must lie in (0, sqrt(2/pi)], got {self.alpha}"
            )
        if self.phase not in ("pilot", "data"):
            raise ValueError(f"phase must be 'pilot' or 'data', got {self.phase!r}")


def bussgang_alpha(k: int, rho: float, phase: Phase = "pilot") -> BussgangGain:
    """Distortion-minimizing linear gain for K-user input at power rho."""
    if k < 1:
        raise ValueError(f"K must be >= 1, got {k}")
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    alpha = float(np.sqrt(2.0 / (np.pi * (1.0 + k * rho))))
    return BussgangGain(alpha=alpha, phase=phase)


def _check_hermitian_pd_diag(c: np.ndarray) -> np.ndarray:
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError(f"covariance must be square, got shape {c.shape}")
    scale = max(1.0, float(np.abs(c).max()))
    if np.abs(c - hermitian(c)).max() > _HERMITIAN_TOL * scale:
        raise ValueError("covariance is not Hermitian")
    d = np.real(np.diagonal(c))
    if (d <= 0).any():
        raise ValueError("covariance has a non-positive diagonal entry")
    return d


def arcsine_covariance(c_yy: np.ndarray) -> np.ndarray:
    """Covariance of the one-bit-quantized signal from the input covariance.

    Normalizes by the diagonal, then applies (2/pi) * arcsin elementwise to
    the real and imaginary parts. The diagonal of the result is exactly 1:
    quantized entries have unit power.
    """
    c_yy = np.asarray(c_yy, dtype=np.complex128)
    d = _check_hermitian_pd_diag(c_yy)
    inv_sqrt_d = 1.0 / np.sqrt(d)
    sigma = c_yy * np.outer(inv_sqrt_d, inv_sqrt_d)
    # the normalized diagonal is exactly 1; writing it avoids amplifying
    # rounding error through arcsin's infinite slope at the endpoint
    np.fill_diagonal(sigma, 1.0)
    return (2.0 / np.pi) * elementwise_asin_clipped(sigma)


def quant_noise_cov(c_yy: np.ndarray, gain: BussgangGain) -> np.ndarray:
    """Covariance of the quantization noise under the linear split r = a*y + q.

    C_qq = C_rr - alpha^2 * C_yy with C_rr from the arcsine law.
    """
    c_yy = np.asarray(c_yy, dtype=np.complex128)
    return arcsine_covariance(c_yy) - (gain.alpha**2) * c_yy


def decomposition_residual(
    y: np.ndarray, r: np.ndarray, gain: BussgangGain
) -> np.ndarray:
    """Realized quantization noise q = r - alpha * y."""
    if y.shape != r.shape:
        raise ValueError(f"shape mismatch: y {y.shape} vs r {r.shape}")
    return r - gain.alpha * y
