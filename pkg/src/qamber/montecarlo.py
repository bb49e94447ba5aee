"""Seeded Monte Carlo BER estimation for Gray-coded PAM and rotated QAM.

Noise is normalised to ``N0 = 1`` and the constellation spacing set to
``d = alpha = pam_alpha / qam_alpha``, so each axis sees zero-mean Gaussian
noise of variance 1/2. Received samples are divided by ``d`` and demapped bit
by bit with :func:`qamber.pam_layout.decide_bits`.

Random streams
--------------
The symbol budget is cut into chunks of :data:`CHUNK_SYMBOLS` symbols. Chunk
``c`` of a job draws from ``Generator(Philox(SeedSequence(seed,
spawn_key=(stream, c))))``; within a chunk the draws are, in order, the
in-phase symbol indices, the quadrature symbol indices (QAM only) and then
the noise. Results therefore depend only on the job, never on the number of
worker threads.

Normal deviates come from the Box-Muller transform: for uniforms
``u1, u2`` drawn consecutively from ``Generator.random`` (on ``[0, 1)``),
``rho = sqrt(-2 ln(1 - u1))`` and the pair is
``(rho cos(2 pi u2), rho sin(2 pi u2))``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np

from .closed_form import PamConfig, QamConfig, pam_alpha, qam_alpha
from .graycode import brgc
from .pam_layout import decide_bits

__all__ = [
    "CHUNK_SYMBOLS",
    "MIN_BITS",
    "THREADS_ENV",
    "SimJob",
    "BerEstimate",
    "chunk_generator",
    "gaussian_pair",
    "gaussian_pairs",
    "simulate",
]

CHUNK_SYMBOLS = 1 << 17
MIN_BITS = 10_000
THREADS_ENV = "QAMBER_THREADS"

Config = Union[PamConfig, QamConfig]


@dataclass(frozen=True)
class SimJob:
    """One Monte Carlo run.

    ``config.ebn0`` may be ``math.inf`` for a noiseless run. ``stream``
    selects an independent family of substreams for the same ``seed``.
    """

    config: Config
    n_bits: int
    seed: int
    stream: int = 0

    def __post_init__(self) -> None:
        bps = self.config.bits_per_symbol
        if self.n_bits < MIN_BITS:
            raise ValueError(f"n_bits must be >= {MIN_BITS}, got {self.n_bits}")
        if self.n_bits % bps:
            raise ValueError(f"n_bits={self.n_bits} is not a multiple of {bps} bits/symbol")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.stream < 0:
            raise ValueError("stream must be non-negative")

    @property
    def n_symbols(self) -> int:
        return self.n_bits // self.config.bits_per_symbol


@dataclass(frozen=True)
class BerEstimate:
    errors: int
    bits: int

    @property
    def estimate(self) -> float:
        return self.errors / self.bits

    @property
    def ci_half_width(self) -> float:
        """Half-width of the normal-approximation 95% interval."""
        p = self.estimate
        return 1.96 * math.sqrt(p * (1.0 - p) / self.bits)

    def __add__(self, other: "BerEstimate") -> "BerEstimate":
        return BerEstimate(self.errors + other.errors, self.bits + other.bits)


def chunk_generator(seed: int, chunk: int, stream: int = 0) -> np.random.Generator:
    """Generator for one chunk of a job."""
    ss = np.random.SeedSequence(seed, spawn_key=(stream, chunk))
    return np.random.Generator(np.random.Philox(ss))


def gaussian_pair(gen: np.random.Generator) -> tuple[float, float]:
    """Two independent standard normal deviates (Box-Muller)."""
    u1, u2 = gen.random(2)
    rho = math.sqrt(-2.0 * math.log1p(-u1))
    return rho * math.cos(2.0 * math.pi * u2), rho * math.sin(2.0 * math.pi * u2)


def gaussian_pairs(gen: np.random.Generator, n: int) -> np.ndarray:
    """``(n, 2)`` array; row ``i`` equals the ``i``-th successive :func:`gaussian_pair`."""
    u = gen.random((n, 2))
    rho = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    ang = 2.0 * np.pi * u[:, 1]
    return np.column_stack((rho * np.cos(ang), rho * np.sin(ang)))


def _axis_tables(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Amplitudes (units of d) and ``(M, m)`` label bits of one Gray-coded axis."""
    M = 2**m
    amps = np.arange(-M + 1, M, 2, dtype=float)
    return amps, brgc(m).as_array()


def _count_axis_errors(r: np.ndarray, labels: np.ndarray, m: int) -> int:
    errors = 0
    for k in range(1, m + 1):
        errors += int(np.count_nonzero(decide_bits(r, m, k) != labels[:, k - 1]))
    return errors


def _run_chunk(job: SimJob, chunk: int, size: int) -> BerEstimate:
    cfg = job.config
    gen = chunk_generator(job.seed, chunk, job.stream)
    if isinstance(cfg, QamConfig):
        alpha = qam_alpha(cfg.mi, cfg.mq, cfg.ebn0)
        amps_i, bits_i = _axis_tables(cfg.mi)
        amps_q, bits_q = _axis_tables(cfg.mq)
        idx_i = gen.integers(0, 2**cfg.mi, size=size)
        idx_q = gen.integers(0, 2**cfg.mq, size=size)
        noise = gaussian_pairs(gen, size) * (math.sqrt(0.5) / alpha)
        a_i, a_q = amps_i[idx_i], amps_q[idx_q]
        c, s = math.cos(cfg.theta), math.sin(cfg.theta)
        r_i = a_i * c - a_q * s + noise[:, 0]
        r_q = a_i * s + a_q * c + noise[:, 1]
        errors = _count_axis_errors(r_i, bits_i[idx_i], cfg.mi)
        errors += _count_axis_errors(r_q, bits_q[idx_q], cfg.mq)
    else:
        alpha = pam_alpha(cfg.K, cfg.ebn0)
        amps, bits = _axis_tables(cfg.K)
        idx = gen.integers(0, 2**cfg.K, size=size)
        noise = gaussian_pairs(gen, (size + 1) // 2).ravel()[:size] * (math.sqrt(0.5) / alpha)
        errors = _count_axis_errors(amps[idx] + noise, bits[idx], cfg.K)
    return BerEstimate(errors, size * cfg.bits_per_symbol)


def _default_workers() -> int:
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"{THREADS_ENV} must be >= 0, got {n}")
    return n or (os.cpu_count() or 1)


def simulate(job: SimJob, workers: int | None = None) -> BerEstimate:
    """Count bit errors over ``job.n_bits`` transmitted bits.

    ``workers`` defaults to ``$QAMBER_THREADS`` (0 or unset means one per CPU).
    """
    n_sym = job.n_symbols
    sizes = [min(CHUNK_SYMBOLS, n_sym - start) for start in range(0, n_sym, CHUNK_SYMBOLS)]
    workers = _default_workers() if workers is None else workers
    if workers <= 1 or len(sizes) == 1:
        parts = [_run_chunk(job, c, size) for c, size in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda cs: _run_chunk(job, *cs), enumerate(sizes)))
    total = BerEstimate(0, 0)
    for part in parts:
        total = total + part
    return total
