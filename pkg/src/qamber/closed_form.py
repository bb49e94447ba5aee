"""Exact bit-error rates of Gray-coded M-PAM and rectangular QAM over AWGN.

The QAM expressions are conditioned on a fixed phase rotation ``theta`` of
the constellation. All Eb/N0 values in this module are linear; convert from
dB with :func:`db_to_linear` at the boundary.

Per-term sums are accumulated with :func:`math.fsum`, so results do not depend
on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence, Union

import numpy as np
from scipy import special

from .graycode import GrayCodeSequence
from .pam_layout import BitLayout, layout, layout_from_column

__all__ = [
    "PamConfig",
    "QamConfig",
    "BerCurve",
    "NotBracketedError",
    "db_to_linear",
    "erfc",
    "erfc_diff",
    "pam_alpha",
    "qam_alpha",
    "psi",
    "pam_bit_terms",
    "pam_bit_ber",
    "pam_ber",
    "generic_labeled_bit_bers",
    "generic_labeled_pam_ber",
    "qam_bit_terms_i",
    "qam_bit_terms_q",
    "qam_bit_ber_i",
    "qam_bit_ber_q",
    "qam_conditional_ber",
    "ber",
    "ber_curve",
    "ebn0_db_at",
    "loss_at",
]


class NotBracketedError(ValueError):
    """Target BER is not crossed anywhere on the curve."""


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


@dataclass(frozen=True)
class PamConfig:
    """``2**K``-PAM at linear ``ebn0``."""

    K: int
    ebn0: float

    def __post_init__(self) -> None:
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if not self.ebn0 > 0:
            raise ValueError(f"ebn0 must be positive, got {self.ebn0}")

    @property
    def bits_per_symbol(self) -> int:
        return self.K

    @property
    def label(self) -> str:
        return f"pam:{self.K}"


@dataclass(frozen=True)
class QamConfig:
    """``2**mi x 2**mq`` rectangular QAM at linear ``ebn0``, rotated by ``theta`` rad."""

    mi: int
    mq: int
    ebn0: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        if self.mi < 1 or self.mq < 1:
            raise ValueError(f"mi and mq must be >= 1, got {self.mi}, {self.mq}")
        if not self.ebn0 > 0:
            raise ValueError(f"ebn0 must be positive, got {self.ebn0}")
        if not abs(self.theta) <= math.pi:
            raise ValueError(f"theta must lie in [-pi, pi], got {self.theta}")

    @property
    def bits_per_symbol(self) -> int:
        return self.mi + self.mq

    @property
    def label(self) -> str:
        return f"qam:{2 ** self.mi}x{2 ** self.mq}"


Config = Union[PamConfig, QamConfig]


def erfc(x):
    """Complementary error function; ``erfc(-inf) = 2`` and ``erfc(inf) = 0``."""
    return special.erfc(x)


def erfc_diff(a, b):
    """``erfc(a) - erfc(b)`` without cancellation when both are close to 2.

    Uses ``erfc(a) - erfc(b) = erfc(-b) - erfc(-a)`` whenever ``b <= 0``. For
    ``a <= b`` the result is non-negative.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    neg = b <= 0
    return np.where(neg, special.erfc(-b) - special.erfc(-a), special.erfc(a) - special.erfc(b))


def pam_alpha(K: int, ebn0: float) -> float:
    """``d / sqrt(N0)`` for ``2**K``-PAM: ``sqrt(3 K ebn0 / (4**K - 1))``."""
    return math.sqrt(3.0 * K * ebn0 / (4**K - 1))


def qam_alpha(mi: int, mq: int, ebn0: float) -> float:
    """``d / sqrt(N0)`` for rectangular QAM with equal spacing on both axes."""
    return math.sqrt(3.0 * (mi + mq) * ebn0 / (4**mi + 4**mq - 2))


def psi(alpha, x, y, z, phi):
    """``erfc(alpha * (x + y cos(phi) + z sin(phi)))``."""
    x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
    return erfc(alpha * (x + y * np.cos(phi) + z * np.sin(phi)))


def _crossing_terms(lay: BitLayout, alpha: float, scale: float, cross: np.ndarray) -> np.ndarray:
    """erfc differences for every (wrong region, position, cross offset) triple.

    The transmitted amplitude ``A`` enters as ``A * scale - cross`` (units of d),
    i.e. ``Psi(alpha, delta, -A, z, theta)`` with ``scale = cos(theta)`` and
    ``cross = z sin(theta)``. PAM uses ``scale = 1`` and ``cross = [0]``.
    """
    parts = []
    for regions, positions in (
        (lay.regions_one, lay.positions_zero),
        (lay.regions_zero, lay.positions_one),
    ):
        lo = np.array([r[0] for r in regions], dtype=float)[:, None, None]
        hi = np.array([r[1] for r in regions], dtype=float)[:, None, None]
        shift = np.asarray(positions, dtype=float)[None, :, None] * scale - cross[None, None, :]
        parts.append(erfc_diff(alpha * (lo - shift), alpha * (hi - shift)).ravel())
    return np.concatenate(parts)


_NO_CROSS = np.zeros(1)


def pam_bit_terms(K: int, k: int, ebn0: float) -> np.ndarray:
    """Individual erfc-difference terms of the bit-``k`` error probability."""
    return _crossing_terms(layout(K, k), pam_alpha(K, ebn0), 1.0, _NO_CROSS)


def pam_bit_ber(K: int, k: int, ebn0: float) -> float:
    """Contribution of bit ``k`` to the ``2**K``-PAM BER.

    Already divided by ``K``, so :func:`pam_ber` is the plain sum over bits.
    """
    M = 2**K
    return math.fsum(pam_bit_terms(K, k, ebn0)) / (2 * M * K)


def pam_ber(K: int, ebn0: float) -> float:
    """Bit-error rate of standard-BRGC ``2**K``-PAM over AWGN."""
    return math.fsum(pam_bit_ber(K, k, ebn0) for k in range(1, K + 1))


def generic_labeled_bit_bers(seq: GrayCodeSequence | Sequence[Sequence[int]], ebn0: float) -> list[float]:
    """Per-bit BER contributions for an arbitrary labelling of ``2**K``-PAM.

    ``seq[i]`` labels amplitude ``-2**K + 1 + 2i``. Regions come from scanning
    runs of equal bits, not from the closed-form index vectors; only the erfc
    summation is shared with :func:`pam_bit_ber`.
    """
    words = np.asarray(seq.words if isinstance(seq, GrayCodeSequence) else seq, dtype=np.uint8)
    M, K = words.shape
    if M != 2**K:
        raise ValueError(f"{M} codewords cannot label a {K}-bit constellation")
    alpha = pam_alpha(K, ebn0)
    out = []
    for k in range(1, K + 1):
        lay = layout_from_column(words[:, k - 1].tolist(), K, k)
        out.append(math.fsum(_crossing_terms(lay, alpha, 1.0, _NO_CROSS)) / (2 * M * K))
    return out


def generic_labeled_pam_ber(seq: GrayCodeSequence | Sequence[Sequence[int]], ebn0: float) -> float:
    """Total PAM BER for an arbitrary labelling; see :func:`generic_labeled_bit_bers`."""
    return math.fsum(generic_labeled_bit_bers(seq, ebn0))


def _cross_offsets(m_other: int, theta: float, sign: float) -> np.ndarray:
    """``z sin(theta)`` for ``z = sign * (2q + 1)`` over the other axis' amplitudes."""
    M = 2**m_other
    odd = 2.0 * np.arange(-M // 2, M // 2) + 1.0
    return sign * odd * math.sin(theta)


def _check_bit(k: int, m: int, axis: str) -> None:
    if not 1 <= k <= m:
        raise ValueError(f"{axis}-bit index k must be in [1, {m}], got {k}")


def qam_bit_terms_i(cfg: QamConfig, k: int) -> np.ndarray:
    """Individual erfc-difference terms for in-phase bit ``k``."""
    _check_bit(k, cfg.mi, "I")
    alpha = qam_alpha(cfg.mi, cfg.mq, cfg.ebn0)
    # z = 2q + 1 over the quadrature amplitudes
    cross = _cross_offsets(cfg.mq, cfg.theta, 1.0)
    return _crossing_terms(layout(cfg.mi, k), alpha, math.cos(cfg.theta), cross)


def qam_bit_terms_q(cfg: QamConfig, k: int) -> np.ndarray:
    """Individual erfc-difference terms for quadrature bit ``k``."""
    _check_bit(k, cfg.mq, "Q")
    alpha = qam_alpha(cfg.mi, cfg.mq, cfg.ebn0)
    # z = -(2i + 1) over the in-phase amplitudes
    cross = _cross_offsets(cfg.mi, cfg.theta, -1.0)
    return _crossing_terms(layout(cfg.mq, k), alpha, math.cos(cfg.theta), cross)


def _qam_norm(cfg: QamConfig) -> int:
    return 2 * (cfg.mi + cfg.mq) * 2**cfg.mi * 2**cfg.mq


def qam_bit_ber_i(cfg: QamConfig, k: int) -> float:
    """Conditional error probability of in-phase bit ``k`` (averaged over all bits)."""
    return math.fsum(qam_bit_terms_i(cfg, k)) / _qam_norm(cfg)


def qam_bit_ber_q(cfg: QamConfig, k: int) -> float:
    """Conditional error probability of quadrature bit ``k`` (averaged over all bits)."""
    return math.fsum(qam_bit_terms_q(cfg, k)) / _qam_norm(cfg)


def qam_conditional_ber(cfg: QamConfig) -> float:
    """BER of rectangular QAM for the fixed rotation ``cfg.theta``."""
    i_part = [qam_bit_ber_i(cfg, k) for k in range(1, cfg.mi + 1)]
    q_part = [qam_bit_ber_q(cfg, k) for k in range(1, cfg.mq + 1)]
    return math.fsum(i_part + q_part)


def ber(cfg: Config) -> float:
    """Closed-form BER for either configuration type."""
    if isinstance(cfg, QamConfig):
        return qam_conditional_ber(cfg)
    return pam_ber(cfg.K, cfg.ebn0)


@dataclass(frozen=True)
class BerCurve:
    """BER sampled on an Eb/N0 grid (dB).

    ``evaluate`` maps a dB value to the exact BER; when present,
    :func:`ebn0_db_at` refines crossings with it instead of interpolating.
    """

    ebn0_db: np.ndarray
    ber: np.ndarray
    label: str = ""
    evaluate: Callable[[float], float] | None = field(default=None, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.ebn0_db)


def ber_curve(template: Config, ebn0_grid_db: Sequence[float]) -> BerCurve:
    """Evaluate ``template`` (its ``ebn0`` is ignored) at every grid point."""
    grid = np.asarray(ebn0_grid_db, dtype=float)
    if grid.size == 0:
        raise ValueError("Eb/N0 grid is empty")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("Eb/N0 grid must be strictly increasing")

    def evaluate(db: float) -> float:
        return ber(replace(template, ebn0=db_to_linear(db)))

    values = np.array([evaluate(float(g)) for g in grid])
    return BerCurve(grid, values, template.label, evaluate)


def ebn0_db_at(curve: BerCurve, target_ber: float, rtol: float = 1e-6) -> float:
    """Smallest Eb/N0 (dB) at which ``curve`` falls to ``target_ber``.

    The bracketing grid interval is located first, the crossing is estimated by
    linear interpolation of ``log10(BER)``, and then refined by bisection on
    ``curve.evaluate`` until ``|BER - target| / target <= rtol``.
    """
    if not 0 < target_ber < 1:
        raise ValueError(f"target BER must lie in (0, 1), got {target_ber}")
    x = curve.ebn0_db
    y = curve.ber
    hits = np.nonzero((y[:-1] >= target_ber) & (y[1:] <= target_ber))[0]
    if hits.size == 0:
        if y.size and y[0] == target_ber:
            return float(x[0])
        raise NotBracketedError(
            f"{curve.label or 'curve'} does not cross BER {target_ber:g} on "
            f"[{x[0]:g}, {x[-1]:g}] dB"
        )
    i = int(hits[0])
    lo, hi = float(x[i]), float(x[i + 1])
    ylo, yhi = float(y[i]), float(y[i + 1])
    lt = math.log10(target_ber)
    if ylo == yhi:
        guess = lo
    elif yhi <= 0:
        guess = hi
    else:
        guess = lo + (hi - lo) * (math.log10(ylo) - lt) / (math.log10(ylo) - math.log10(yhi))
    if curve.evaluate is None:
        return guess
    f = curve.evaluate
    mid = guess
    for _ in range(200):
        val = f(mid)
        if abs(val - target_ber) <= rtol * target_ber:
            return mid
        if val > target_ber:
            lo = mid
        else:
            hi = mid
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-13:
            break
    return mid


def loss_at(reference: BerCurve, impaired: BerCurve, target_ber: float) -> float:
    """Extra Eb/N0 (dB) the impaired curve needs to reach ``target_ber``."""
    return ebn0_db_at(impaired, target_ber) - ebn0_db_at(reference, target_ber)
