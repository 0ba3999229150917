"""Uplink channel estimation and achievable rates for one-bit massive MIMO.

A base station with one-bit ADCs keeps only the signs of the received
real/imaginary parts. This package simulates that uplink at desk scale:
quantized pilot training, LMMSE and LS channel estimation with closed-form
error analysis, and three routes to the MRC achievable rate (Monte Carlo,
moment-based bound, closed form), plus a CLI for SNR sweeps to CSV.
"""

from .backend import active_backend
from .bussgang import (
    BussgangGain,
    arcsine_covariance,
    bussgang_alpha,
    decomposition_residual,
    quant_noise_cov,
)
from .estimation import (
    EstimationOutcome,
    analytical_mse,
    empirical_mse,
    estimation_trials,
    lmmse_estimate,
    ls_estimate,
)
from .experiments import (
    ConfigError,
    ResultRow,
    SweepSpec,
    run_mse_sweep,
    run_rate_sweep,
    validate,
    write_csv,
)
from .numerics import (
    RandomStream,
    elementwise_asin_clipped,
    hermitian,
    matmul,
    sample_circular_gaussian,
    substream_index,
)
from .rates import (
    RateReport,
    SinrBreakdown,
    ergodic_rate_mc,
    lemma1_rate,
    mrc_combine,
    sinr_breakdown,
    theorem1_rate,
)
from .system_model import (
    SystemConfig,
    data_receive,
    draw_channel,
    make_pilots,
    quantize,
    snr_db_to_linear,
    training_receive,
)

__version__ = "0.1.0"

__all__ = [
    "active_backend",
    "BussgangGain",
    "arcsine_covariance",
    "bussgang_alpha",
    "decomposition_residual",
    "quant_noise_cov",
    "EstimationOutcome",
    "analytical_mse",
    "empirical_mse",
    "estimation_trials",
    "lmmse_estimate",
    "ls_estimate",
    "ConfigError",
    "ResultRow",
    "SweepSpec",
    "run_mse_sweep",
    "run_rate_sweep",
    "validate",
    "write_csv",
    "RandomStream",
    "elementwise_asin_clipped",
    "hermitian",
    "matmul",
    "sample_circular_gaussian",
    "substream_index",
    "RateReport",
    "SinrBreakdown",
    "ergodic_rate_mc",
    "lemma1_rate",
    "mrc_combine",
    "sinr_breakdown",
    "theorem1_rate",
    "SystemConfig",
    "data_receive",
    "draw_channel",
    "make_pilots",
    "quantize",
    "snr_db_to_linear",
    "training_receive",
    "__version__",
]
