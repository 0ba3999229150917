"""Seeded random streams and the small set of complex-matrix operations
the simulator needs.

Matrices are plain ``numpy.ndarray`` of dtype complex128. A "stream" is a
reproducible random substream: equal ``(master_seed, stream_index)`` pairs
replay the exact same sequence, and distinct indices give statistically
independent substreams, so Monte Carlo trials can run in any order (or in
parallel) without changing a single drawn value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RandomStream",
    "substream_index",
    "sample_circular_gaussian",
    "hermitian",
    "matmul",
    "elementwise_asin_clipped",
    "EXP_MSE_SWEEP",
    "EXP_RATE_SWEEP",
    "EXP_VALIDATE",
    "EXP_ORACLE",
]

# Clipping tolerance for arcsine inputs: correlation coefficients built in
# floating point may exceed +-1 by machine-level error only. Anything larger
# is a covariance-construction bug and must not be masked.
ASIN_CLIP_TOL = 1e-9

# Experiment ids for substream derivation. Distinct ids keep the random
# ensembles of different entry points disjoint under one master seed.
EXP_MSE_SWEEP = 1
EXP_RATE_SWEEP = 2
EXP_VALIDATE = 3
EXP_ORACLE = 4

_MAX_SEED = 2**64


@dataclass
class RandomStream:
    """One independent, replayable substream of the master seed.

    The underlying generator is stateful: consecutive draws from the same
    instance continue the sequence. A fresh instance with the same
    ``(master_seed, stream_index)`` replays it bit-identically.
    """

    master_seed: int
    stream_index: int = 0
    _gen: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed < _MAX_SEED:
            raise ValueError(f"master_seed must be a u64, got {self.master_seed}")
        if self.stream_index < 0:
            raise ValueError(f"stream_index must be >= 0, got {self.stream_index}")
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        self._gen = np.random.Generator(np.random.PCG64(seq))

    @property
    def generator(self) -> np.random.Generator:
        return self._gen


def substream_index(experiment_id: int, cell: int, trial: int) -> int:
    """Injective packing of (experiment, sweep cell, trial) into one index.

    Keeps every Monte Carlo trial on its own substream so results do not
    depend on scheduling or worker count.
    """
    if not 0 <= experiment_id < 2**8:
        raise ValueError(f"experiment_id out of range: {experiment_id}")
    if not 0 <= cell < 2**16:
        raise ValueError(f"cell out of range: {cell}")
    if not 0 <= trial < 2**32:
        raise ValueError(f"trial out of range: {trial}")
    return (experiment_id << 48) | (cell << 32) | trial


def sample_circular_gaussian(
    stream: RandomStream, rows: int, cols: int, variance: float = 1.0
) -> np.ndarray:
    """Draw an i.i.d. circularly-symmetric complex Gaussian matrix.

    Each entry has total complex variance ``variance``, split evenly
    between the real and imaginary parts.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"dimensions must be positive, got {rows}x{cols}")
    if variance <= 0:
        raise ValueError(f"variance must be positive, got {variance}")
    gen = stream.generator
    scale = np.sqrt(variance / 2.0)
    re = gen.standard_normal((rows, cols))
    im = gen.standard_normal((rows, cols))
    return scale * (re + 1j * im)


def hermitian(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(m.T)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex matrix product with an explicit dimension check."""
    if a.shape[-1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def elementwise_asin_clipped(m: np.ndarray) -> np.ndarray:
    """arcsin applied separately to real and imaginary parts of each entry.

    Inputs are correlation coefficients, so both parts must lie in [-1, 1]
    up to ``ASIN_CLIP_TOL``; a larger overshoot raises.
    """
    from . import backend

    return backend.asin_clipped(np.asarray(m, dtype=np.complex128), ASIN_CLIP_TOL)
