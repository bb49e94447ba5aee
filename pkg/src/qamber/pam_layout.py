"""Bit decision regions and bit positions of a Gray-labelled M-PAM.

Everything is measured in units of ``d`` (half the spacing between adjacent
amplitudes), so all levels are exact integers: region endpoints are even and
symbol positions are odd. Unbounded region ends are ``-inf`` / ``+inf``.

Grid coordinates passed to :func:`delta` and :func:`region_length` may be
ints, :class:`fractions.Fraction` or floats, but must be whole multiples of
1/4; they are held internally as integer quarter-units.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .graycode import MAX_BITS, brgc

__all__ = [
    "NEG_INF",
    "POS_INF",
    "BitLayout",
    "delta",
    "region_indices",
    "position_indices",
    "region_sets",
    "region_length",
    "position_sets",
    "formula_layout",
    "layout",
    "layout_from_column",
    "brute_force_layout",
    "decide_bit",
    "decide_bits",
]

NEG_INF = float("-inf")
POS_INF = float("inf")

Level = Union[int, float]
Interval = tuple[Level, Level]
Coordinate = Union[int, float, Fraction]


def _check_kk(K: int, k: int, max_K: int = MAX_BITS) -> None:
    if not 1 <= K <= max_K:
        raise ValueError(f"K must be in [1, {max_K}], got {K}")
    if not 1 <= k <= K:
        raise ValueError(f"k must be in [1, K={K}], got {k}")


def _quarters(x: Coordinate) -> int:
    q = Fraction(x) * 4
    if q.denominator != 1:
        raise ValueError(f"grid coordinate {x!r} is not a multiple of 1/4")
    return int(q)


@dataclass(frozen=True)
class BitLayout:
    """Decision regions and symbol positions of bit ``k`` for ``2**K``-PAM.

    Regions are half-open ``[lower, upper)`` intervals sorted left to right.
    """

    K: int
    k: int
    regions_one: tuple[Interval, ...]
    regions_zero: tuple[Interval, ...]
    positions_one: tuple[int, ...]
    positions_zero: tuple[int, ...]

    @property
    def boundaries(self) -> tuple[int, ...]:
        """Finite region endpoints, ascending."""
        ends = {lo for lo, _ in self.regions_one + self.regions_zero}
        return tuple(sorted(int(e) for e in ends if e != NEG_INF))

    @property
    def region_bits(self) -> tuple[int, ...]:
        """Bit value of every region, left to right."""
        tagged = [(lo, 1) for lo, _ in self.regions_one]
        tagged += [(lo, 0) for lo, _ in self.regions_zero]
        return tuple(b for _, b in sorted(tagged))


def delta(x: Coordinate, K: int, k: int) -> Level:
    """Region endpoint (in units of d) addressed by grid coordinate ``x``.

    ``x = -1`` and ``x = 2**(k-1)`` map to ``-inf`` and ``+inf``; in between,
    ``-2**K * (1 - 2**(1-k)) + x * 2**(K-k+2)``.

    >>> delta(1, 3, 3)
    -2
    >>> delta(Fraction(-1, 2), 5, 2)
    -32
    """
    _check_kk(K, k)
    q = _quarters(x)
    top = 4 * 2 ** (k - 1)
    if q < -4 or q > top:
        raise ValueError(f"x={x} outside [-1, {2 ** (k - 1)}] for k={k}")
    if q == -4:
        return NEG_INF
    if q == top:
        return POS_INF
    # x * 2**(K-k+2) == q * 2**(K-k); exact since k <= K
    return -(2**K) + 2 ** (K - k + 1) + q * 2 ** (K - k)


def region_indices(k: int) -> tuple[list[int], list[int]]:
    """Region index vectors for bit one and bit zero."""
    if k == 1:
        return [-1], [-1]
    return list(range(-1, 2 ** (k - 2))), list(range(-1, 2 ** (k - 2) - 1))


def position_indices(k: int) -> tuple[list[Fraction], list[Fraction]]:
    """Position index vectors for bit one and bit zero.

    Identical to :func:`region_indices` except the leading ``-1`` of the bit-one
    vector becomes ``-3/4``, so that the leftmost region is bounded at ``-2**K``.
    """
    ones, zeros = region_indices(k)
    return [Fraction(-3, 4)] + [Fraction(p) for p in ones[1:]], [Fraction(p) for p in zeros]


def region_sets(K: int, k: int) -> tuple[list[Interval], list[Interval]]:
    """Decision regions of bit ``k``: ``(regions for 1, regions for 0)``."""
    _check_kk(K, k)
    ones, zeros = region_indices(k)
    regions_one = [(delta(2 * p + 1, K, k), delta(2 * p + 2, K, k)) for p in ones]
    regions_zero = [(delta(2 * p + 2, K, k), delta(2 * p + 3, K, k)) for p in zeros]
    return regions_one, regions_zero


def _augmented_grid(k: int) -> list[Fraction]:
    half = Fraction(1, 2)
    top = 2 ** (k - 1)
    inner = [Fraction(i) for i in range(0, top)]
    return [-half] + inner + [top - half]


def region_length(x: Coordinate, K: int, k: int) -> int:
    """Length (in units of d) of the bounded region starting at grid point ``x``.

    ``x`` must lie on the augmented grid ``-1/2, 0, 1, ..., 2**(k-1) - 1,
    2**(k-1) - 1/2`` and must not be its last element.
    """
    _check_kk(K, k)
    grid = _augmented_grid(k)
    fx = Fraction(_quarters(x), 4)
    try:
        i = grid.index(fx)
    except ValueError:
        raise ValueError(f"x={x} is not on the augmented grid for k={k}") from None
    if i == len(grid) - 1:
        raise ValueError(f"x={x} is the last grid point and has no successor")
    length = (grid[i + 1] - fx) * 2 ** (K - k + 2)
    assert length.denominator == 1
    return int(length)


def position_sets(K: int, k: int) -> tuple[list[int], list[int]]:
    """Amplitudes (odd integers, units of d) of symbols whose bit ``k`` is 1 / 0."""
    _check_kk(K, k)
    ones_idx, zeros_idx = position_indices(k)
    ones: list[int] = []
    for x in ones_idx:
        start = 2 * x + 1
        base = delta(start, K, k)
        ones.extend(int(base) + 2 * j + 1 for j in range(region_length(start, K, k) // 2))
    zeros: list[int] = []
    for x in zeros_idx:
        start = 2 * x + 2
        base = delta(start, K, k)
        zeros.extend(int(base) + 2 * j + 1 for j in range(region_length(start, K, k) // 2))
    return ones, zeros


def formula_layout(K: int, k: int) -> BitLayout:
    """Layout built from the closed-form index vectors (uncached)."""
    r1, r0 = region_sets(K, k)
    a1, a0 = position_sets(K, k)
    return BitLayout(K, k, tuple(r1), tuple(r0), tuple(a1), tuple(a0))


@lru_cache(maxsize=None)
def layout(K: int, k: int) -> BitLayout:
    """Cached :func:`formula_layout`."""
    return formula_layout(K, k)


def layout_from_column(values: Sequence[int], K: int, k: int) -> BitLayout:
    """Layout of an arbitrary bit labelling by scanning runs of equal bits.

    ``values[i]`` is the bit carried by the symbol at amplitude ``-2**K + 1 + 2i``.
    Region boundaries fall midway between neighbouring symbols whose bits differ.
    """
    M = 2**K
    if len(values) != M:
        raise ValueError(f"expected {M} bit values, got {len(values)}")
    amps = [-M + 1 + 2 * i for i in range(M)]
    regions: dict[int, list[Interval]] = {0: [], 1: []}
    positions: dict[int, list[int]] = {0: [], 1: []}
    lower: Level = NEG_INF
    for i, (a, b) in enumerate(zip(amps, values)):
        positions[int(b)].append(a)
        if i == M - 1:
            regions[int(b)].append((lower, POS_INF))
        elif values[i + 1] != b:
            regions[int(b)].append((lower, a + 1))
            lower = a + 1
    return BitLayout(
        K, k,
        tuple(regions[1]), tuple(regions[0]),
        tuple(positions[1]), tuple(positions[0]),
    )


def brute_force_layout(K: int, k: int) -> BitLayout:
    """Oracle layout: place the standard BRGC on the amplitude grid and scan it."""
    _check_kk(K, k, max_K=12)
    return layout_from_column(brgc(K).column(k), K, k)


def decide_bits(r: np.ndarray | float, K: int, k: int) -> np.ndarray:
    """Hard decision on bit ``k`` for received amplitudes ``r`` (units of d).

    Membership of a region is ``lower <= r < upper``, except that for ``k = 1``
    a sample exactly at 0 decodes as 1.
    """
    r = np.asarray(r, dtype=float)
    if k == 1:
        _check_kk(K, k)
        return (r <= 0).astype(np.uint8)
    lay = layout(K, k)
    bits = np.array(lay.region_bits, dtype=np.uint8)
    idx = np.searchsorted(np.array(lay.boundaries, dtype=float), r, side="right")
    return bits[idx]


def decide_bit(r: float, K: int, k: int) -> int:
    """Scalar form of :func:`decide_bits`."""
    return int(decide_bits(r, K, k))
