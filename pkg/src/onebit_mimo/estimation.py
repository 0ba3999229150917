"""Channel estimators from one-bit training observations and their MSE.

Both estimators are scalar multiples of R_p @ conj(Phi), where R_p is the
quantized M x tau training block:

* LMMSE:  H_hat = alpha_p * sqrt(rho_p) * R_p @ conj(Phi)
* LS:     H_hat = R_p @ conj(Phi) / (tau * sqrt(rho_p))

The LMMSE scaling is the linear-MMSE solution for orthogonal pilots (the
Kronecker-structured estimator collapses to this product, so no MK x MK
matrix is ever formed). The LS baseline applies the pseudo-inverse of the
unquantized training map to the quantized output.

The normalized estimation error of the LMMSE estimator has the closed form

    mse(K, rho_p) = 1 - 2*K*rho_p / (pi * (K*rho_p + 1))

which decreases monotonically in rho_p and floors at 1 - 2/pi: past a
point, extra training power buys nothing because the quantizer has
destroyed the amplitude information.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bussgang import bussgang_alpha
from .numerics import EXP_ORACLE, RandomStream, substream_index
from .system_model import SystemConfig, draw_channel, make_pilots, quantize, training_receive

__all__ = [
    "EstimationOutcome",
    "lmmse_estimate",
    "ls_estimate",
    "empirical_mse",
    "analytical_mse",
    "estimation_trials",
]


@dataclass
class EstimationOutcome:
    """Estimate from the final trial plus per-trial normalized errors."""

    h_hat: np.ndarray
    per_trial_mse: list[float] = field(default_factory=list)

    def mean_mse(self) -> float:
        # compensated summation keeps the average independent of trial order
        return math.fsum(self.per_trial_mse) / len(self.per_trial_mse)

    def stderr_mse(self) -> float:
        n = len(self.per_trial_mse)
        if n < 2:
            return 0.0
        return float(np.std(self.per_trial_mse, ddof=1) / math.sqrt(n))


def _check_training_shapes(cfg: SystemConfig, r_p: np.ndarray, phi: np.ndarray) -> None:
    if cfg.tau != cfg.K:
        raise ValueError(f"estimators assume tau == K, got {cfg.tau} != {cfg.K}")
    if r_p.shape != (cfg.M, cfg.tau):
        raise ValueError(f"quantized block shape {r_p.shape} != {(cfg.M, cfg.tau)}")
    if phi.shape != (cfg.tau, cfg.K):
        raise ValueError(f"pilot shape {phi.shape} != {(cfg.tau, cfg.K)}")


def lmmse_estimate(cfg: SystemConfig, r_p: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Linear-MMSE channel estimate (M x K) from the quantized training block."""
    _check_training_shapes(cfg, r_p, phi)
    alpha_p = bussgang_alpha(cfg.K, cfg.rho_p, "pilot").alpha
    return alpha_p * np.sqrt(cfg.rho_p) * (r_p @ np.conj(phi))


def ls_estimate(cfg: SystemConfig, r_p: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Least-squares baseline (M x K) from the quantized training block."""
    _check_training_shapes(cfg, r_p, phi)
    return (r_p @ np.conj(phi)) / (cfg.tau * np.sqrt(cfg.rho_p))


def empirical_mse(h_true: np.ndarray, h_hat: np.ndarray) -> float:
    """Normalized squared error ||h_hat - h||_F^2 / ||h||_F^2 for one trial."""
    if h_true.shape != h_hat.shape:
        raise ValueError(f"shape mismatch: {h_true.shape} vs {h_hat.shape}")
    denom = float(np.linalg.norm(h_true) ** 2)
    if denom == 0.0:
        raise ValueError("true channel has zero norm")
    return float(np.linalg.norm(h_hat - h_true) ** 2) / denom


def analytical_mse(k: int, rho_p: float) -> float:
    """Closed-form normalized MSE of the LMMSE estimate."""
    if k < 1:
        raise ValueError(f"K must be >= 1, got {k}")
    if not rho_p > 0:
        raise ValueError(f"rho_p must be positive, got {rho_p}")
    krho = k * rho_p
    return 1.0 - 2.0 * krho / (math.pi * (krho + 1.0))


def estimation_trials(
    cfg: SystemConfig,
    trials: int,
    *,
    experiment_id: int = EXP_ORACLE,
    cell: int = 0,
) -> tuple[EstimationOutcome, EstimationOutcome]:
    """Monte Carlo training phase: (lmmse, ls) outcomes over shared draws.

    Both estimators see the same channel/noise realizations per trial, so
    their error curves are directly comparable. Trial t draws from its own
    substream; results do not depend on execution order.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    phi = make_pilots(cfg)
    lmmse_out = EstimationOutcome(h_hat=np.zeros((cfg.M, cfg.K), dtype=np.complex128))
    ls_out = EstimationOutcome(h_hat=np.zeros((cfg.M, cfg.K), dtype=np.complex128))
    for t in range(trials):
        stream = RandomStream(cfg.master_seed, substream_index(experiment_id, cell, t))
        h = draw_channel(cfg, stream)
        r_p = quantize(training_receive(cfg, h, phi, stream))
        h_lm = lmmse_estimate(cfg, r_p, phi)
        h_ls = ls_estimate(cfg, r_p, phi)
        lmmse_out.per_trial_mse.append(empirical_mse(h, h_lm))
        ls_out.per_trial_mse.append(empirical_mse(h, h_ls))
        if t == trials - 1:
            lmmse_out.h_hat = h_lm
            ls_out.h_hat = h_ls
    return lmmse_out, ls_out
