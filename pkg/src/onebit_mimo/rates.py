"""MRC detection and the three achievable-rate evaluations.

Three routes to the uplink rate under one-bit quantization and MRC:

* ``ergodic_rate_mc`` -- Monte Carlo: per channel realization, run the
  quantized training phase, form the per-realization SINR from the five
  signal components (desired, user interference, estimation error, AWGN,
  quantization noise), and average log2(1 + SINR).
* ``lemma1_rate`` -- plug sample moments of the estimate/channel inner
  products into the worst-case-Gaussian effective-noise bound.
* ``theorem1_rate`` -- closed form of that bound for the LMMSE estimator:

      SINR = rho_d * a_d^2 * a_p^2 * K * rho_p * M
             / (rho_d * a_d^2 * K + a_d^2 + 1 - 2/pi)

All users are statistically identical, so the closed form carries no user
index.

Quantization noise enters the SINR through a white-Gaussian model with the
channel-averaged covariance (1 - 2/pi) * I. That is the consistent
companion of the fixed channel-averaged gain a_d: plugging a
per-realization input covariance (rho_d * H H^H + I) into the noise
formula while keeping a_d fixed overstates the noise power by tens of
percent (the formula is exact only at the covariance the gain was
optimized for) and pushes the Monte Carlo curve below the closed-form
lower bound. ``ergodic_rate_mc`` keeps the per-realization variant
available behind ``quant_cov="per_realization"`` for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .bussgang import BussgangGain, bussgang_alpha, quant_noise_cov
from .estimation import lmmse_estimate
from .numerics import EXP_RATE_SWEEP, RandomStream, hermitian, substream_index
from .system_model import SystemConfig, draw_channel, make_pilots, quantize, training_receive

__all__ = [
    "RateMethod",
    "SinrBreakdown",
    "RateReport",
    "mrc_combine",
    "sinr_breakdown",
    "ergodic_rate_mc",
    "lemma1_moments",
    "lemma1_rate",
    "theorem1_rate",
]

RateMethod = Literal["ergodic_eq20", "lemma1_eq23", "theorem1_eq26"]

_QUANT_IMAG_TOL = 1e-10


@dataclass(frozen=True)
class SinrBreakdown:
    """The five per-user signal/noise powers of one MRC detection."""

    desired: float
    user_interference: float
    estimate_error: float
    awgn: float
    quant_noise: float

    def sinr(self) -> float:
        return self.desired / (
            self.user_interference + self.estimate_error + self.awgn + self.quant_noise
        )


@dataclass(frozen=True)
class RateReport:
    """Per-user and sum rates (bits/s/Hz) from one evaluation method."""

    per_user_rates: tuple[float, ...]
    method: RateMethod
    sum_rate: float = field(init=False)
    sum_rate_stderr: float = 0.0

    def __post_init__(self) -> None:
        if any(r < 0 for r in self.per_user_rates):
            raise ValueError("rates must be nonnegative")
        if self.sum_rate_stderr < 0:
            raise ValueError("stderr must be nonnegative")
        object.__setattr__(self, "sum_rate", math.fsum(self.per_user_rates))


def mrc_combine(h_hat: np.ndarray, r_d: np.ndarray) -> np.ndarray:
    """Separate the quantized receive vector into K streams: s_hat = H_hat^H r_d."""
    if h_hat.ndim != 2 or r_d.shape != (h_hat.shape[0], 1):
        raise ValueError(f"shape mismatch: h_hat {h_hat.shape}, r_d {r_d.shape}")
    return hermitian(h_hat) @ r_d


def sinr_breakdown(
    h: np.ndarray,
    h_hat: np.ndarray,
    c_qq: np.ndarray,
    gain_d: BussgangGain,
    rho_d: float,
) -> list[SinrBreakdown]:
    """Per-user signal/noise powers for one channel realization."""
    a2 = gain_d.alpha**2
    g = hermitian(h_hat) @ h_hat                     # K x K estimate Gram matrix
    e = hermitian(h_hat) @ (h - h_hat)               # projections onto est. error
    quad = hermitian(h_hat) @ c_qq @ h_hat
    qdiag = np.diagonal(quad)
    scale = np.abs(qdiag)
    bad = np.abs(qdiag.imag) > _QUANT_IMAG_TOL * np.maximum(scale, 1e-300)
    if bad.any():
        raise ValueError("quantization-noise quadratic form is not real")
    gdiag = np.real(np.diagonal(g))                  # ||h_hat_k||^2
    g_abs2 = np.abs(g) ** 2
    out = []
    for k in range(h_hat.shape[1]):
        out.append(
            SinrBreakdown(
                desired=rho_d * a2 * gdiag[k] ** 2,
                user_interference=rho_d * a2 * float(g_abs2[k].sum() - g_abs2[k, k]),
                estimate_error=rho_d * a2 * float((np.abs(e[k]) ** 2).sum()),
                awgn=a2 * gdiag[k],
                quant_noise=float(qdiag[k].real),
            )
        )
    return out


def _training_trial(
    cfg: SystemConfig, phi: np.ndarray, experiment_id: int, cell: int, trial: int
) -> tuple[np.ndarray, np.ndarray]:
    """Draw one channel, run the quantized training phase, estimate it."""
    stream = RandomStream(cfg.master_seed, substream_index(experiment_id, cell, trial))
    h = draw_channel(cfg, stream)
    r_p = quantize(training_receive(cfg, h, phi, stream))
    return h, lmmse_estimate(cfg, r_p, phi)


def ergodic_rate_mc(
    cfg: SystemConfig,
    trials: int,
    *,
    experiment_id: int = EXP_RATE_SWEEP,
    cell: int = 0,
    quant_cov: Literal["averaged", "per_realization"] = "averaged",
) -> RateReport:
    """Monte Carlo per-realization rate over channel and training randomness.

    Expectation runs over both the channel and the training-phase noise and
    quantization: each trial simulates one full training phase.

    ``quant_cov`` selects the input covariance fed to the quantization-noise
    model: the channel average (K*rho_d + 1) * I (default; consistent with
    the fixed gain a_d, see module docstring) or the per-realization
    rho_d * H H^H + I.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if quant_cov not in ("averaged", "per_realization"):
        raise ValueError(f"unknown quant_cov mode {quant_cov!r}")
    phi = make_pilots(cfg)
    gain_d = bussgang_alpha(cfg.K, cfg.rho_d, "data")
    eye = np.eye(cfg.M, dtype=np.complex128)
    c_qq_avg = quant_noise_cov((cfg.K * cfg.rho_d + 1.0) * eye, gain_d)
    rates = np.empty((trials, cfg.K))
    for t in range(trials):
        h, h_hat = _training_trial(cfg, phi, experiment_id, cell, t)
        if quant_cov == "per_realization":
            c_qq = quant_noise_cov(cfg.rho_d * (h @ hermitian(h)) + eye, gain_d)
        else:
            c_qq = c_qq_avg
        for k, comp in enumerate(sinr_breakdown(h, h_hat, c_qq, gain_d, cfg.rho_d)):
            rates[t, k] = math.log2(1.0 + comp.sinr())
    per_user = tuple(math.fsum(rates[:, k]) / trials for k in range(cfg.K))
    sums = rates.sum(axis=1)
    stderr = float(np.std(sums, ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return RateReport(per_user_rates=per_user, method="ergodic_eq20", sum_rate_stderr=stderr)


def lemma1_moments(
    cfg: SystemConfig,
    trials: int,
    *,
    experiment_id: int = EXP_RATE_SWEEP,
    cell: int = 0,
    perfect_csi: bool = False,
) -> dict[str, np.ndarray]:
    """Sample moments feeding the effective-noise rate bound.

    Per user k: mean and second moment of h_hat_k^H h_k, the summed
    interference power sum_{i != k} |h_hat_k^H h_i|^2, and ||h_hat_k||^2.
    Uses the same trial ensemble (substream mapping) as ergodic_rate_mc so
    bound comparisons are noise-correlated.

    perfect_csi substitutes the true channel for its estimate (test hook).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    phi = make_pilots(cfg)
    k_users = cfg.K
    z_vals = np.empty((trials, k_users), dtype=np.complex128)
    z_abs2 = np.empty((trials, k_users))
    ui_vals = np.empty((trials, k_users))
    hn_vals = np.empty((trials, k_users))
    for t in range(trials):
        h, h_hat = _training_trial(cfg, phi, experiment_id, cell, t)
        if perfect_csi:
            h_hat = h
        z = hermitian(h_hat) @ h                     # K x K cross inner products
        zdiag = np.diagonal(z)
        zsq = np.abs(z) ** 2
        z_vals[t] = zdiag
        z_abs2[t] = np.abs(zdiag) ** 2
        ui_vals[t] = zsq.sum(axis=1) - np.diagonal(zsq)
        hn_vals[t] = np.real(np.sum(np.abs(h_hat) ** 2, axis=0))
    mean_z = z_vals.mean(axis=0)
    var_z = z_abs2.mean(axis=0) - np.abs(mean_z) ** 2   # plug-in variance, >= 0
    return {
        "mean_z": mean_z,
        "var_z": var_z,
        "mean_ui": ui_vals.mean(axis=0),
        "mean_hnorm2": hn_vals.mean(axis=0),
    }


def lemma1_rate(
    cfg: SystemConfig,
    trials: int,
    *,
    experiment_id: int = EXP_RATE_SWEEP,
    cell: int = 0,
    perfect_csi: bool = False,
) -> RateReport:
    """Effective-noise lower bound with Monte Carlo moments plugged in."""
    m = lemma1_moments(
        cfg, trials, experiment_id=experiment_id, cell=cell, perfect_csi=perfect_csi
    )
    gain_d = bussgang_alpha(cfg.K, cfg.rho_d, "data")
    a2 = gain_d.alpha**2
    rd = cfg.rho_d
    ui = rd * a2 * m["mean_ui"]
    aqn = (a2 + 1.0 - 2.0 / math.pi) * m["mean_hnorm2"]
    num = rd * a2 * np.abs(m["mean_z"]) ** 2
    den = rd * a2 * m["var_z"] + ui + aqn
    rates = tuple(float(np.log2(1.0 + num[k] / den[k])) for k in range(cfg.K))
    return RateReport(per_user_rates=rates, method="lemma1_eq23")


def theorem1_rate(cfg: SystemConfig) -> RateReport:
    """Closed-form lower bound for MRC on the LMMSE channel estimate."""
    a_p2 = bussgang_alpha(cfg.K, cfg.rho_p, "pilot").alpha ** 2
    a_d2 = bussgang_alpha(cfg.K, cfg.rho_d, "data").alpha ** 2
    num = cfg.rho_d * a_d2 * a_p2 * cfg.K * cfg.rho_p * cfg.M
    den = cfg.rho_d * a_d2 * cfg.K + a_d2 + (1.0 - 2.0 / math.pi)
    rate = math.log2(1.0 + num / den)
    return RateReport(per_user_rates=(rate,) * cfg.K, method="theorem1_eq26")
