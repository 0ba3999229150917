"""Sweep orchestration, CSV persistence, and the reduced-scale validation suite.

Sweeps walk a grid of (antenna count, SNR) cells. Every Monte Carlo trial
of every cell draws from its own substream of the master seed, so the CSV
output is byte-identical for a given (spec, seed) no matter how many
worker threads execute the cells.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Literal

import numpy as np

from . import bussgang, estimation, rates, system_model
from .numerics import (
    EXP_MSE_SWEEP,
    EXP_RATE_SWEEP,
    EXP_VALIDATE,
    RandomStream,
    substream_index,
)
from .system_model import SystemConfig, snr_db_to_linear

__all__ = [
    "ConfigError",
    "SweepSpec",
    "ResultRow",
    "CSV_HEADER",
    "run_mse_sweep",
    "run_rate_sweep",
    "render_csv",
    "write_csv",
    "parse_config_file",
    "build_spec",
    "validate",
]

CSV_HEADER = "experiment,m,k,snr_db,metric,value,stderr,trials,seed"

# Desk-scale defaults. Trial counts keep standard errors far below the
# tolerances the analysis asserts; grids bracket the plotted ranges.
DEFAULT_K = 8
DEFAULT_MSE_TRIALS = 10000
DEFAULT_RATE_TRIALS = 2000
DEFAULT_MSE_SNR_DB = [float(x) for x in range(-10, 31, 2)]
DEFAULT_RATE_SNR_DB = [float(x) for x in range(-10, 11, 2)]
DEFAULT_MSE_M = [128]
DEFAULT_RATE_M = [32, 64, 128]

CONFIG_KEYS = ("m_list", "k", "snr_db_list", "rho_mode", "trials", "seed", "out_path")

Experiment = Literal["mse_fig1", "rate_fig2", "validate"]


class ConfigError(ValueError):
    """Invalid sweep configuration (CLI exit code 1)."""


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: grid points plus the scenario template they modify."""

    snr_db_points: tuple[float, ...]
    m_values: tuple[int, ...]
    fixed: SystemConfig
    experiment: Experiment
    rho_mode: Literal["both", "pilot"] = "both"
    threads: int = 1

    def __post_init__(self) -> None:
        if not self.snr_db_points:
            raise ConfigError("snr_db_list must be nonempty")
        if any(b <= a for a, b in zip(self.snr_db_points, self.snr_db_points[1:])):
            raise ConfigError("snr_db_list must be strictly increasing")
        if not self.m_values:
            raise ConfigError("m_list must be nonempty")
        if any(m < self.fixed.K for m in self.m_values):
            raise ConfigError(
                f"every m in m_list must be >= K={self.fixed.K}, got {self.m_values}"
            )
        if self.rho_mode not in ("both", "pilot"):
            raise ConfigError(f"rho_mode must be 'both' or 'pilot', got {self.rho_mode!r}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    m: int
    k: int
    snr_db: float
    metric: str
    value: float
    stderr: float
    trials: int
    seed: int

    def __post_init__(self) -> None:
        if self.stderr < 0:
            raise ValueError("stderr must be >= 0")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


def _cell_config(spec: SweepSpec, m: int, snr_db: float) -> SystemConfig:
    rho = snr_db_to_linear(snr_db)
    rho_d = rho if spec.rho_mode == "both" else 1.0
    return replace(spec.fixed, M=m, rho_p=rho, rho_d=rho_d)


def _map_cells(
    spec: SweepSpec, fn: Callable[[tuple[int, int]], list[ResultRow]]
) -> list[ResultRow]:
    """Run fn over all (m_index, snr_index) cells, optionally threaded.

    Executor.map preserves input order, and each cell's randomness comes
    from its own substreams, so worker count never changes any value.
    """
    cells = [(mi, si) for mi in range(len(spec.m_values)) for si in range(len(spec.snr_db_points))]
    if spec.threads == 1:
        chunks: Iterable[list[ResultRow]] = (fn(c) for c in cells)
    else:
        with ThreadPoolExecutor(max_workers=spec.threads) as ex:
            chunks = list(ex.map(fn, cells))
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.m, r.snr_db, r.metric))
    return rows


def run_mse_sweep(spec: SweepSpec) -> list[ResultRow]:
    """Channel-estimation error sweep: empirical LMMSE/LS plus the closed form."""
    if spec.experiment != "mse_fig1":
        raise ConfigError(f"spec.experiment must be 'mse_fig1', got {spec.experiment!r}")
    n_snr = len(spec.snr_db_points)
    seed = spec.fixed.master_seed
    trials = spec.fixed.trials

    def run_cell(cell: tuple[int, int]) -> list[ResultRow]:
        mi, si = cell
        m, snr_db = spec.m_values[mi], spec.snr_db_points[si]
        cfg = _cell_config(spec, m, snr_db)
        lmmse_out, ls_out = estimation.estimation_trials(
            cfg, trials, experiment_id=EXP_MSE_SWEEP, cell=mi * n_snr + si
        )
        common = dict(experiment=spec.experiment, m=m, k=cfg.K, snr_db=snr_db,
                      trials=trials, seed=seed)
        return [
            ResultRow(metric="lmmse_analytical", stderr=0.0,
                      value=estimation.analytical_mse(cfg.K, cfg.rho_p), **common),
            ResultRow(metric="lmmse_empirical", value=lmmse_out.mean_mse(),
                      stderr=lmmse_out.stderr_mse(), **common),
            ResultRow(metric="ls_empirical", value=ls_out.mean_mse(),
                      stderr=ls_out.stderr_mse(), **common),
        ]

    return _map_cells(spec, run_cell)


def run_rate_sweep(spec: SweepSpec) -> list[ResultRow]:
    """Sum-rate sweep: Monte Carlo rate plus the closed-form lower bound."""
    if spec.experiment != "rate_fig2":
        raise ConfigError(f"spec.experiment must be 'rate_fig2', got {spec.experiment!r}")
    n_snr = len(spec.snr_db_points)
    seed = spec.fixed.master_seed
    trials = spec.fixed.trials

    def run_cell(cell: tuple[int, int]) -> list[ResultRow]:
        mi, si = cell
        m, snr_db = spec.m_values[mi], spec.snr_db_points[si]
        cfg = _cell_config(spec, m, snr_db)
        mc = rates.ergodic_rate_mc(
            cfg, trials, experiment_id=EXP_RATE_SWEEP, cell=mi * n_snr + si
        )
        lb = rates.theorem1_rate(cfg)
        common = dict(experiment=spec.experiment, m=m, k=cfg.K, snr_db=snr_db,
                      trials=trials, seed=seed)
        return [
            ResultRow(metric="ergodic_eq20", value=mc.sum_rate,
                      stderr=mc.sum_rate_stderr, **common),
            ResultRow(metric="theorem1_eq26", value=lb.sum_rate, stderr=0.0, **common),
        ]

    return _map_cells(spec, run_cell)


def _fmt(v: float) -> str:
    return format(float(v), ".10g")


def render_csv(rows: list[ResultRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.experiment},{r.m},{r.k},{_fmt(r.snr_db)},{r.metric},"
            f"{_fmt(r.value)},{_fmt(r.stderr)},{r.trials},{r.seed}"
        )
    return "\n".join(lines) + "\n"


def write_csv(rows: list[ResultRow], path: str | Path) -> None:
    Path(path).write_text(render_csv(rows), encoding="ascii", newline="")


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Flat key-value config: one `key = value` per line, # comments."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    out: dict[str, str] = {}
    for ln, raw in enumerate(p.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{p}:{ln}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{p}:{ln}: unknown key {key!r} (known: {', '.join(CONFIG_KEYS)})")
        if key in out:
            raise ConfigError(f"{p}:{ln}: duplicate key {key!r}")
        out[key] = value
    return out


def _parse_int(name: str, s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {s!r}") from None


def _parse_list(name: str, s: str, cast: Callable) -> tuple:
    try:
        items = tuple(cast(part.strip()) for part in s.split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"{name} must be a comma-separated list, got {s!r}") from None
    if not items:
        raise ConfigError(f"{name} must be nonempty")
    return items


def build_spec(
    experiment: Experiment, settings: dict[str, str]
) -> tuple[SweepSpec, str]:
    """Merge defaults with config/CLI settings; returns (spec, out_path)."""
    if experiment == "mse_fig1":
        m_values: tuple[int, ...] = tuple(DEFAULT_MSE_M)
        snr = tuple(DEFAULT_MSE_SNR_DB)
        trials = DEFAULT_MSE_TRIALS
        rho_mode = "pilot"
        out_path = "mse_sweep.csv"
    elif experiment == "rate_fig2":
        m_values = tuple(DEFAULT_RATE_M)
        snr = tuple(DEFAULT_RATE_SNR_DB)
        trials = DEFAULT_RATE_TRIALS
        rho_mode = "both"
        out_path = "rate_sweep.csv"
    else:
        raise ConfigError(f"unknown experiment {experiment!r}")
    k = DEFAULT_K
    seed = 0
    threads = 1

    for key, value in settings.items():
        if value is None:
            continue
        if key == "m_list":
            m_values = _parse_list("m_list", value, int)
        elif key == "k":
            k = _parse_int("k", value)
        elif key == "snr_db_list":
            snr = _parse_list("snr_db_list", value, float)
        elif key == "rho_mode":
            rho_mode = value
        elif key == "trials":
            trials = _parse_int("trials", value)
        elif key == "seed":
            seed = _parse_int("seed", value)
        elif key == "out_path":
            out_path = value
        elif key == "threads":
            threads = _parse_int("threads", value)
        else:
            raise ConfigError(f"unknown setting {key!r}")

    try:
        fixed = SystemConfig(
            M=max(m_values), K=k, tau=k, rho_p=1.0, rho_d=1.0,
            trials=trials, master_seed=seed,
        )
        spec = SweepSpec(
            snr_db_points=tuple(snr), m_values=m_values, fixed=fixed,
            experiment=experiment, rho_mode=rho_mode, threads=threads,
        )
    except (ValueError, ConfigError) as e:
        raise ConfigError(str(e)) from None
    return spec, out_path


# ---------------------------------------------------------------------------
# Reduced-scale validation suite (CLI `validate`): every library invariant
# at M <= 32, K <= 4. Kept as named checks so failures point at a subsystem.
# ---------------------------------------------------------------------------


def _check_rng_determinism(seed: int) -> None:
    a = RandomStream(seed, 7)
    b = RandomStream(seed, 7)
    m1 = a.generator.standard_normal(64)
    m2 = b.generator.standard_normal(64)
    assert (m1 == m2).all(), "equal (seed, index) streams diverged"
    c = RandomStream(seed, 8).generator.standard_normal(64)
    assert not (m1 == c).all(), "distinct stream_index produced identical draws"


def _check_pilot_orthogonality(seed: int) -> None:
    for k in range(1, 5):
        cfg = SystemConfig(M=max(k, 4), K=k, tau=k, rho_p=1.0, rho_d=1.0)
        phi = system_model.make_pilots(cfg)
        gram = phi.T @ np.conj(phi)
        err = np.abs(gram - k * np.eye(k)).max()
        assert err < 1e-12, f"K={k}: pilot Gram deviates by {err:.2e}"
        assert np.abs(np.abs(phi) - 1.0).max() < 1e-12, f"K={k}: pilots not unit-modulus"


def _check_quantizer(seed: int) -> None:
    stream = RandomStream(seed, substream_index(EXP_VALIDATE, 0, 0))
    y = system_model.draw_channel(SystemConfig(M=32, K=4, tau=4, rho_p=1, rho_d=1), stream)
    r = system_model.quantize(y)
    s = 1 / np.sqrt(2)
    lattice = {complex(a, b) for a in (s, -s) for b in (s, -s)}
    assert set(r.ravel().tolist()) <= lattice, "quantizer output left the 4-point set"
    assert np.abs(np.abs(r) ** 2 - 1.0).max() < 1e-15, "quantized power not 1"
    assert (system_model.quantize(3.7 * y) == r).all(), "not scale invariant"
    z = system_model.quantize(np.array([[-2.0 + 0.0j]]))
    assert z[0, 0] == complex(-s, s), "sign(0) must map to +1"


def _check_bussgang_gain(seed: int) -> None:
    a41 = bussgang.bussgang_alpha(4, 1.0).alpha
    assert abs(a41 - math.sqrt(2 / (5 * math.pi))) < 1e-15
    prev = math.inf
    for rho in (0.01, 0.1, 1.0, 10.0, 100.0):
        g = bussgang.bussgang_alpha(4, rho)
        assert g.alpha < prev, "alpha must decrease with rho"
        prev = g.alpha
        invariant = g.alpha * math.sqrt(1 + 4 * rho)
        assert abs(invariant - math.sqrt(2 / math.pi)) < 1e-12


def _check_arcsine_unit_diagonal(seed: int) -> None:
    stream = RandomStream(seed, substream_index(EXP_VALIDATE, 1, 0))
    a = stream.generator.standard_normal((4, 4)) + 1j * stream.generator.standard_normal((4, 4))
    c = a @ np.conj(a.T) + 4 * np.eye(4)
    c_rr = bussgang.arcsine_covariance(c)
    assert np.abs(np.real(np.diagonal(c_rr)) - 1.0).max() < 1e-12
    assert np.abs(np.imag(np.diagonal(c_rr))).max() < 1e-12


def _check_quant_noise_floor(seed: int) -> None:
    k, rho = 4, 2.0
    gain = bussgang.bussgang_alpha(k, rho, "data")
    c_yy = (k * rho + 1) * np.eye(8, dtype=np.complex128)
    c_qq = bussgang.quant_noise_cov(c_yy, gain)
    target = 1 - 2 / math.pi
    assert np.abs(np.diagonal(c_qq) - target).max() < 1e-12
    off = c_qq - np.diag(np.diagonal(c_qq))
    assert np.abs(off).max() < 1e-12


def _check_residual_uncorrelated(seed: int) -> None:
    cfg = SystemConfig(M=32, K=4, tau=4, rho_p=1.0, rho_d=1.0)
    phi = system_model.make_pilots(cfg)
    gain = bussgang.bussgang_alpha(cfg.K, cfg.rho_p, "pilot")
    prods = []
    for t in range(800):
        stream = RandomStream(seed, substream_index(EXP_VALIDATE, 2, t))
        h = system_model.draw_channel(cfg, stream)
        y = system_model.training_receive(cfg, h, phi, stream)
        q = bussgang.decomposition_residual(y, system_model.quantize(y), gain)
        prods.append((q * np.conj(y)).ravel())
    x = np.concatenate(prods)
    se = x.std() / math.sqrt(x.size)
    assert abs(x.mean()) < 3 * se, f"residual correlates with input: {abs(x.mean()):.3e} vs se {se:.1e}"


def _check_mse_analytical_match(seed: int) -> None:
    cfg = SystemConfig(M=32, K=4, tau=4, rho_p=1.0, rho_d=1.0, master_seed=seed)
    lmmse_out, _ = estimation.estimation_trials(cfg, 3000, experiment_id=EXP_VALIDATE, cell=3)
    ana = estimation.analytical_mse(cfg.K, cfg.rho_p)
    rel = abs(lmmse_out.mean_mse() - ana) / ana
    assert rel < 0.05, f"empirical vs closed-form MSE off by {rel:.1%}"
    grid = [0.1, 0.5, 1.0, 5.0, 50.0]
    vals = [estimation.analytical_mse(cfg.K, r) for r in grid]
    assert all(b < a for a, b in zip(vals, vals[1:])), "closed-form MSE not decreasing"
    assert all(v > 1 - 2 / math.pi for v in vals), "closed-form MSE below its floor"


def _check_ls_dominates(seed: int) -> None:
    for snr_db in (-10.0, 0.0, 10.0):
        rho = snr_db_to_linear(snr_db)
        cfg = SystemConfig(M=32, K=4, tau=4, rho_p=rho, rho_d=1.0, master_seed=seed)
        lmmse_out, ls_out = estimation.estimation_trials(
            cfg, 1500, experiment_id=EXP_VALIDATE, cell=4
        )
        assert ls_out.mean_mse() >= lmmse_out.mean_mse(), f"LS beat LMMSE at {snr_db} dB"


def _check_rate_bound_ordering(seed: int) -> None:
    cfg = SystemConfig(M=32, K=4, tau=4, rho_p=1.0, rho_d=1.0, master_seed=seed)
    mc = rates.ergodic_rate_mc(cfg, 600, experiment_id=EXP_VALIDATE, cell=5)
    lb = rates.theorem1_rate(cfg)
    assert lb.sum_rate <= mc.sum_rate + 3 * mc.sum_rate_stderr, (
        f"closed-form bound {lb.sum_rate:.3f} above MC {mc.sum_rate:.3f}"
    )
    lm = rates.lemma1_rate(cfg, 600, experiment_id=EXP_VALIDATE, cell=5)
    rel = abs(lm.sum_rate - lb.sum_rate) / lb.sum_rate
    assert rel < 0.10, f"moment bound vs closed form differ by {rel:.1%}"


def _check_theorem1_monotone_m(seed: int) -> None:
    prev = -math.inf
    for m in (8, 16, 32):
        cfg = SystemConfig(M=m, K=4, tau=4, rho_p=1.0, rho_d=1.0)
        rep = rates.theorem1_rate(cfg)
        assert len(set(rep.per_user_rates)) == 1, "closed form must not depend on user"
        assert rep.sum_rate > prev, "sum rate not increasing in M"
        prev = rep.sum_rate


def _check_report_determinism(seed: int) -> None:
    fixed = SystemConfig(M=16, K=4, tau=4, rho_p=1.0, rho_d=1.0, trials=30, master_seed=seed)
    spec1 = SweepSpec(snr_db_points=(-5.0, 5.0), m_values=(8, 16), fixed=fixed,
                      experiment="rate_fig2", threads=1)
    spec4 = replace(spec1, threads=4)
    csv1 = render_csv(run_rate_sweep(spec1))
    csv4 = render_csv(run_rate_sweep(spec4))
    assert csv1 == csv4, "thread count changed CSV bytes"


_VALIDATION_CHECKS: list[tuple[str, Callable[[int], None]]] = [
    ("rng-determinism", _check_rng_determinism),
    ("pilot-orthogonality", _check_pilot_orthogonality),
    ("quantizer-output-set", _check_quantizer),
    ("bussgang-gain", _check_bussgang_gain),
    ("arcsine-unit-diagonal", _check_arcsine_unit_diagonal),
    ("quant-noise-floor", _check_quant_noise_floor),
    ("residual-uncorrelated", _check_residual_uncorrelated),
    ("mse-analytical-match", _check_mse_analytical_match),
    ("ls-dominates-lmmse", _check_ls_dominates),
    ("rate-bound-ordering", _check_rate_bound_ordering),
    ("theorem1-monotone-m", _check_theorem1_monotone_m),
    ("report-determinism", _check_report_determinism),
]


def validate(seed: int = 0) -> tuple[str, bool]:
    """Run every reduced-scale invariant check; returns (report, all_passed)."""
    lines = [f"validation suite: seed={seed}, reduced scale (M<=32, K<=4)"]
    passed = 0
    for name, check in _VALIDATION_CHECKS:
        try:
            check(seed)
        except Exception as e:  # noqa: BLE001 - report any failure, keep going
            lines.append(f"[FAIL] {name}: {e}")
        else:
            passed += 1
            lines.append(f"[ ok ] {name}")
    ok = passed == len(_VALIDATION_CHECKS)
    lines.append(
        f"{'PASSED' if ok else 'FAILED'} {passed}/{len(_VALIDATION_CHECKS)} checks"
    )
    return "\n".join(lines) + "\n", ok
