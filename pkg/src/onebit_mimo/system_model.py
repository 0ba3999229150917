"""Channel, pilot, and transmit-signal generation plus the one-bit quantizer.

Uplink model with unit-variance AWGN at every antenna:

* training phase:  Y_p = sqrt(rho_p) * H * Phi^T + N_p   (M x tau)
* data phase:      y_d = sqrt(rho_d) * H * s + n_d       (M x 1)

The one-bit ADC keeps only the signs of the real and imaginary parts, so
every quantized entry lands in (1/sqrt(2)) * {1+1j, 1-1j, -1+1j, -1-1j}
and has unit power exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .numerics import RandomStream, sample_circular_gaussian

__all__ = [
    "SystemConfig",
    "snr_db_to_linear",
    "draw_channel",
    "make_pilots",
    "quantize",
    "training_receive",
    "data_receive",
]


@dataclass(frozen=True)
class SystemConfig:
    """Scenario parameters for one simulation setup.

    Powers are linear and dimensionless; with unit noise variance they are
    per-user transmit SNRs. Pilot sequences are mutually orthogonal with
    tau == K, which is the regime all closed forms here assume.
    """

    M: int
    K: int
    tau: int
    rho_p: float
    rho_d: float
    trials: int = 1
    master_seed: int = 0

    def __post_init__(self) -> None:
        if self.M < 1:
            raise ValueError(f"M must be >= 1, got {self.M}")
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if self.tau != self.K:
            raise ValueError(f"tau must equal K, got tau={self.tau}, K={self.K}")
        if not self.rho_p > 0:
            raise ValueError(f"rho_p must be positive, got {self.rho_p}")
        if not self.rho_d > 0:
            raise ValueError(f"rho_d must be positive, got {self.rho_d}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError(f"master_seed must be a u64, got {self.master_seed}")


def snr_db_to_linear(snr_db: float) -> float:
    return float(10.0 ** (snr_db / 10.0))


def draw_channel(cfg: SystemConfig, stream: RandomStream) -> np.ndarray:
    """i.i.d. zero-mean unit-variance circular Gaussian channel, M x K."""
    return sample_circular_gaussian(stream, cfg.M, cfg.K, 1.0)


def make_pilots(cfg: SystemConfig) -> np.ndarray:
    """Unit-modulus orthogonal pilot matrix (tau x K) with Phi^T Phi* = tau I.

    The K x K discrete-Fourier basis: entry (t, k) = exp(-2j*pi*t*k/K).
    Constant envelope, exists for every K.
    """
    if cfg.tau != cfg.K:
        raise ValueError(f"orthogonal pilots need tau == K, got {cfg.tau} != {cfg.K}")
    k = cfg.K
    t = np.arange(k)
    return np.exp(-2j * np.pi * np.outer(t, t) / k)


def quantize(y: np.ndarray) -> np.ndarray:
    """Apply the one-bit ADC separately to real and imaginary parts.

    sign(0) is defined as +1 so the map is total and deterministic.
    NaN input means something upstream already failed, so it is rejected
    rather than silently mapped to a sign.
    """
    y = np.asarray(y, dtype=np.complex128)
    if np.isnan(y.real).any() or np.isnan(y.imag).any():
        raise ValueError("NaN in quantizer input; upstream computation failed")
    return backend.quantize_kernel(y)


def training_receive(
    cfg: SystemConfig,
    h: np.ndarray,
    phi: np.ndarray,
    stream: RandomStream,
    *,
    noise: np.ndarray | None = None,
) -> np.ndarray:
    """Unquantized training-phase receive block, M x tau.

    ``noise`` overrides the drawn AWGN block (test hook; pass zeros to get
    the noiseless product).
    """
    if h.shape != (cfg.M, cfg.K):
        raise ValueError(f"channel shape {h.shape} != {(cfg.M, cfg.K)}")
    if phi.shape != (cfg.tau, cfg.K):
        raise ValueError(f"pilot shape {phi.shape} != {(cfg.tau, cfg.K)}")
    if noise is None:
        noise = sample_circular_gaussian(stream, cfg.M, cfg.tau, 1.0)
    elif noise.shape != (cfg.M, cfg.tau):
        raise ValueError(f"noise shape {noise.shape} != {(cfg.M, cfg.tau)}")
    return np.sqrt(cfg.rho_p) * (h @ phi.T) + noise


def data_receive(
    cfg: SystemConfig,
    h: np.ndarray,
    s: np.ndarray,
    stream: RandomStream,
    *,
    noise: np.ndarray | None = None,
) -> np.ndarray:
    """Unquantized data-phase receive vector, M x 1.

    Caller contract: s is K x 1 with unit average symbol power.
    """
    if h.shape != (cfg.M, cfg.K):
        raise ValueError(f"channel shape {h.shape} != {(cfg.M, cfg.K)}")
    if s.shape != (cfg.K, 1):
        raise ValueError(f"symbol shape {s.shape} != {(cfg.K, 1)}")
    if noise is None:
        noise = sample_circular_gaussian(stream, cfg.M, 1, 1.0)
    elif noise.shape != (cfg.M, 1):
        raise ValueError(f"noise shape {noise.shape} != {(cfg.M, 1)}")
    return np.sqrt(cfg.rho_d) * (h @ s) + noise
