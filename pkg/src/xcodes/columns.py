"""Binary columns and triples over the point set {0, ..., m-1}.

Columns are packed into Python ints (bit ``i`` is row/point ``i``), so OR,
XOR and subset tests are single integer operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class Triple(tuple):
    """A 3-subset of points, canonicalized to strictly increasing order."""

    __slots__ = ()

    def __new__(cls, *points):
        if len(points) == 1:
            points = tuple(points[0])
        pts = tuple(sorted(int(p) for p in points))
        if len(pts) != 3 or pts[0] == pts[1] or pts[1] == pts[2]:
            raise ValueError(f"a triple needs 3 distinct points, got {points!r}")
        if pts[0] < 0:
            raise ValueError(f"points must be non-negative, got {points!r}")
        return super().__new__(cls, pts)

    def __repr__(self) -> str:
        return "Triple(%d, %d, %d)" % self

    @property
    def mask(self) -> int:
        a, b, c = self
        return (1 << a) | (1 << b) | (1 << c)

    @classmethod
    def from_mask(cls, mask: int) -> "Triple":
        return cls(support(mask))


@dataclass(frozen=True)
class BitColumn:
    """A length-``m`` binary column stored as a packed int."""

    bits: int
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("column length must be non-negative")
        if self.bits < 0 or self.bits >> self.m:
            raise ValueError(f"bits {self.bits:#x} do not fit in length {self.m}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitColumn":
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"not a binary entry: {b!r}")
            value |= b << i
        return cls(value, len(bits))

    @classmethod
    def from_support(cls, points: Iterable[int], m: int) -> "BitColumn":
        value = 0
        for p in points:
            if not 0 <= p < m:
                raise ValueError(f"point {p} outside 0..{m - 1}")
            value |= 1 << p
        return cls(value, m)

    @classmethod
    def zero(cls, m: int) -> "BitColumn":
        return cls(0, m)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.m)]

    @property
    def weight(self) -> int:
        return popcount(self.bits)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(support(self.bits))

    def __str__(self) -> str:
        return "".join(map(str, self.to_list()))


def popcount(value: int) -> int:
    return bin(value).count("1")


def support(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _same_length(a: BitColumn, b: BitColumn) -> None:
    if a.m != b.m:
        raise ValueError(f"column lengths differ: {a.m} != {b.m}")


def superimposed_sum(a: BitColumn, b: BitColumn) -> BitColumn:
    """Coordinatewise OR."""
    _same_length(a, b)
    return BitColumn(a.bits | b.bits, a.m)


def gf2_add(a: BitColumn, b: BitColumn) -> BitColumn:
    """Coordinatewise sum over GF(2)."""
    _same_length(a, b)
    return BitColumn(a.bits ^ b.bits, a.m)


def contains(a: BitColumn, b: BitColumn) -> bool:
    """True iff ``a`` is contained in ``b``, i.e. ``a OR b == b``."""
    _same_length(a, b)
    return a.bits | b.bits == b.bits


def odd_point_union(blocks: Iterable[Iterable[int]]) -> frozenset[int]:
    """Points covered by an odd number of the given blocks."""
    acc = 0
    for block in blocks:
        acc ^= Triple(block).mask
    return frozenset(support(acc))


def triple_to_column(t: Triple, m: int) -> BitColumn:
    if t[2] >= m:
        raise ValueError(f"{t!r} has a point outside 0..{m - 1}")
    return BitColumn(t.mask, m)


@lru_cache(maxsize=64)
def all_triples(m: int) -> tuple[Triple, ...]:
    """Every triple on ``m`` points, in lexicographic order."""
    return tuple(Triple(c) for c in itertools.combinations(range(m), 3))


@lru_cache(maxsize=64)
def triple_index(m: int) -> dict[Triple, int]:
    """Lexicographic rank of each triple on ``m`` points."""
    return {t: i for i, t in enumerate(all_triples(m))}
