"""Binary reflected Gray code sequences and label transforms.

Codeword bits are indexed 1..n from the left (MSB first). The i-th codeword
of a sequence (0-based) labels the i-th leftmost constellation amplitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "MAX_BITS",
    "GrayCodeSequence",
    "BitColumn",
    "LabelTransform",
    "brgc",
    "apply_transform",
    "bit_column",
    "is_gray",
]

MAX_BITS = 16

Word = tuple[int, ...]


def _check_bits(n: int, name: str = "n") -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"{name} must be an integer, got {n!r}")
    if not 1 <= n <= MAX_BITS:
        raise ValueError(f"{name} must be in [1, {MAX_BITS}], got {n}")


@dataclass(frozen=True)
class GrayCodeSequence:
    """Ordered list of ``2**n`` binary codewords.

    ``words[i]`` is a tuple of ``n`` bits labelling the i-th amplitude level.
    Nothing here enforces the Gray property; use :func:`is_gray` for that.
    """

    n: int
    words: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.words) != 2**self.n:
            raise ValueError(
                f"expected {2 ** self.n} codewords for n={self.n}, got {len(self.words)}"
            )
        if any(len(w) != self.n for w in self.words):
            raise ValueError(f"every codeword must have {self.n} bits")
        if len(set(self.words)) != len(self.words):
            raise ValueError("codewords must be distinct")

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __getitem__(self, i: int) -> Word:
        return self.words[i]

    def column(self, k: int) -> tuple[int, ...]:
        """Bit ``k`` (1-based from the left) of every codeword, in order."""
        if not 1 <= k <= self.n:
            raise ValueError(f"k must be in [1, {self.n}], got {k}")
        return tuple(w[k - 1] for w in self.words)

    def as_array(self) -> np.ndarray:
        """``(2**n, n)`` uint8 array of codeword bits."""
        return np.array(self.words, dtype=np.uint8).reshape(len(self.words), self.n)

    def as_strings(self) -> list[str]:
        return ["".join(map(str, w)) for w in self.words]

    @classmethod
    def from_strings(cls, words: Sequence[str]) -> "GrayCodeSequence":
        parsed = tuple(tuple(int(c) for c in w) for w in words)
        n = len(parsed[0]) if parsed else 0
        return cls(n, parsed)


@dataclass(frozen=True)
class BitColumn:
    """Values of bit ``k`` across all codewords of the standard ``K``-bit BRGC."""

    K: int
    k: int
    values: tuple[int, ...]


@dataclass(frozen=True)
class LabelTransform:
    """Bit permutation followed by bit complementation, applied to every codeword.

    Output bit ``i`` is input bit ``permutation[i - 1]`` XOR ``complement_mask[i - 1]``
    (both 1-based). Swapping bits 1 and 3 of a 3-bit word is ``permutation=(3, 2, 1)``.
    """

    permutation: tuple[int, ...]
    complement_mask: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.permutation)
        if sorted(self.permutation) != list(range(1, n + 1)):
            raise ValueError(f"permutation {self.permutation} is not a bijection on 1..{n}")
        if len(self.complement_mask) != n:
            raise ValueError("complement_mask must have one entry per bit")
        if any(b not in (0, 1) for b in self.complement_mask):
            raise ValueError("complement_mask entries must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.permutation)

    @classmethod
    def identity(cls, n: int) -> "LabelTransform":
        return cls(tuple(range(1, n + 1)), (0,) * n)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "LabelTransform":
        perm = tuple(int(p) + 1 for p in rng.permutation(n))
        mask = tuple(int(b) for b in rng.integers(0, 2, size=n))
        return cls(perm, mask)

    def inverse(self) -> "LabelTransform":
        n = self.n
        inv = [0] * n
        for i, p in enumerate(self.permutation):
            inv[p - 1] = i + 1
        mask = tuple(self.complement_mask[inv[j] - 1] for j in range(n))
        return LabelTransform(tuple(inv), mask)

    def __call__(self, word: Word) -> Word:
        return tuple(
            word[p - 1] ^ c for p, c in zip(self.permutation, self.complement_mask)
        )


def brgc(n: int) -> GrayCodeSequence:
    """Standard binary reflected Gray code with ``n`` bits.

    Starts from ``(1, 0)``; each step prefixes ``1`` to the previous sequence and
    ``0`` to its reversal, then concatenates the two.

    >>> brgc(2).as_strings()
    ['11', '10', '00', '01']
    """
    _check_bits(n)
    words: list[Word] = [(1,), (0,)]
    for _ in range(n - 1):
        words = [(1,) + w for w in words] + [(0,) + w for w in reversed(words)]
    return GrayCodeSequence(n, tuple(words))


def apply_transform(seq: GrayCodeSequence, t: LabelTransform) -> GrayCodeSequence:
    if t.n != seq.n:
        raise ValueError(f"transform acts on {t.n} bits but sequence has {seq.n}")
    return GrayCodeSequence(seq.n, tuple(t(w) for w in seq.words))


def bit_column(K: int, k: int) -> BitColumn:
    """Bit ``k`` of the standard ``K``-bit BRGC, built from its run-length pattern.

    For ``k = 1`` this is ``2**(K-1)`` ones followed by as many zeros. For
    ``k >= 2`` it opens and closes with ``2**(K-k)`` ones, with alternating runs
    of zeros and ones of length ``2**(K-k+1)`` in between.
    """
    _check_bits(K, "K")
    if not 1 <= k <= K:
        raise ValueError(f"k must be in [1, {K}], got {k}")
    if k == 1:
        half = 2 ** (K - 1)
        return BitColumn(K, k, (1,) * half + (0,) * half)
    edge = 2 ** (K - k)
    run = 2 * edge
    values: list[int] = [1] * edge
    bit = 0
    for _ in range(2 ** (k - 1) - 1):
        values.extend([bit] * run)
        bit ^= 1
    values.extend([1] * edge)
    return BitColumn(K, k, tuple(values))


def is_gray(seq: GrayCodeSequence | Sequence[Sequence[int]], cyclic: bool = False) -> bool:
    """True iff consecutive codewords differ in exactly one bit.

    With ``cyclic=True`` the last and first codewords must also be neighbours.
    """
    words = list(seq.words if isinstance(seq, GrayCodeSequence) else seq)
    if len(words) < 2:
        return True
    pairs = list(zip(words, words[1:]))
    if cyclic:
        pairs.append((words[-1], words[0]))
    for a, b in pairs:
        if len(a) != len(b) or sum(x != y for x, y in zip(a, b)) != 1:
            return False
    return True
