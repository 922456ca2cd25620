"""Exhaustive X-code verification.

A matrix is an ``(m, n, d, x)`` X-code when the OR of any ``x`` columns never
contains the GF(2) sum of any other non-empty set of at most ``d`` columns.
This module checks the property by direct enumeration and is meant as the
trusted oracle for desk-sized codes, not as a fast checker.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .columns import BitColumn, Triple, gf2_add, contains, superimposed_sum

Block = Union[Triple, BitColumn]


@dataclass(frozen=True)
class XCode:
    """An ``(m, n, d, x)`` code given as an ordered family of distinct blocks.

    Blocks are either all :class:`Triple` (weight-3 codes) or all
    :class:`BitColumn`. ``verified`` is set by the builders once the code
    has passed :func:`is_xcode` for its own ``(d, x)``.
    """

    m: int
    d: int
    x: int
    blocks: tuple = ()
    verified: bool = field(default=False, compare=False)

    def __post_init__(self):
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if self.d < 1 or self.x < 0:
            raise ValueError(f"need d >= 1 and x >= 0, got d={self.d}, x={self.x}")
        kinds = {type(b) for b in blocks}
        if len(kinds) > 1:
            raise ValueError("blocks must be all triples or all bit columns")
        for b in blocks:
            if isinstance(b, Triple):
                if b[2] >= self.m:
                    raise ValueError(f"{b!r} has a point outside 0..{self.m - 1}")
            elif isinstance(b, BitColumn):
                if b.m != self.m:
                    raise ValueError(f"column of length {b.m} in a code with m={self.m}")
            else:
                raise TypeError(f"unsupported block type {type(b).__name__}")
        if len(set(blocks)) != len(blocks):
            raise ValueError("blocks must be pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def is_triple_code(self) -> bool:
        return all(isinstance(b, Triple) for b in self.blocks)

    def masks(self) -> list[int]:
        return _masks(self.blocks)

    def columns(self) -> list[BitColumn]:
        return [b if isinstance(b, BitColumn) else BitColumn(b.mask, self.m) for b in self.blocks]

    def matrix(self) -> np.ndarray:
        """The ``m x n`` 0/1 incidence matrix, columns in block order."""
        h = np.zeros((self.m, self.n), dtype=np.uint8)
        for j, mask in enumerate(self.masks()):
            for i in range(self.m):
                h[i, j] = (mask >> i) & 1
        return h

    def with_params(self, d: int, x: int) -> "XCode":
        return XCode(self.m, d, x, self.blocks)


@dataclass(frozen=True)
class ViolationWitness:
    """Column indices ``x_part`` whose OR contains the XOR of ``s_part``."""

    x_part: tuple[int, ...]
    s_part: tuple[int, ...]

    def holds_for(self, columns: Sequence[BitColumn]) -> bool:
        """Re-check the containment through the column algebra."""
        if not self.s_part or set(self.x_part) & set(self.s_part):
            return False
        m = columns[0].m
        cover = BitColumn.zero(m)
        for i in self.x_part:
            cover = superimposed_sum(cover, columns[i])
        total = BitColumn.zero(m)
        for j in self.s_part:
            total = gf2_add(total, columns[j])
        return contains(total, cover)


def _masks(blocks: Iterable) -> list[int]:
    out = []
    for b in blocks:
        if isinstance(b, BitColumn):
            out.append(b.bits)
        elif isinstance(b, int):
            out.append(b)
        else:
            out.append(Triple(b).mask)
    return out


def first_xor_subset(values: Sequence[int], k: int, target: int = 0) -> Optional[tuple[int, ...]]:
    """Lexicographically first ``k`` positions of ``values`` whose XOR is ``target``.

    Enumerates the first ``k - 1`` positions and looks the last one up by
    value, so the cost is ``C(len(values), k - 1)`` rather than
    ``C(len(values), k)``.
    """
    if k == 0:
        return () if target == 0 else None
    where: dict[int, list[int]] = {}
    for pos, v in enumerate(values):
        where.setdefault(v, []).append(pos)
    if k == 1:
        hits = where.get(target)
        return (hits[0],) if hits else None
    for prefix in itertools.combinations(range(len(values) - 1), k - 1):
        acc = target
        for pos in prefix:
            acc ^= values[pos]
        hits = where.get(acc)
        if hits:
            i = bisect.bisect_right(hits, prefix[-1])
            if i < len(hits):
                return prefix + (hits[i],)
    return None


def find_violation(code, d: Optional[int] = None, x: Optional[int] = None) -> Optional[ViolationWitness]:
    """Return the first counterexample to the X-code property, or ``None``.

    ``code`` is an :class:`XCode` or a plain sequence of blocks (duplicates
    allowed). ``d`` and ``x`` default to the code's own parameters. The
    witness is the first in the order: ``x_part`` lexicographic, then
    ``s_part`` by size, then lexicographic.
    """
    if isinstance(code, XCode):
        d = code.d if d is None else d
        x = code.x if x is None else x
        masks = code.masks()
    else:
        if d is None or x is None:
            raise TypeError("d and x are required when passing a bare block list")
        masks = _masks(code)
    if d < 1 or x < 0:
        raise ValueError(f"need d >= 1 and x >= 0, got d={d}, x={x}")
    n = len(masks)
    if n <= x:
        return None
    for xs in itertools.combinations(range(n), x):
        cover = 0
        for i in xs:
            cover |= masks[i]
        chosen = set(xs)
        rest = [j for j in range(n) if j not in chosen]
        outside = [masks[j] & ~cover for j in rest]
        for k in range(1, min(d, len(rest)) + 1):
            hit = first_xor_subset(outside, k)
            if hit is not None:
                return ViolationWitness(tuple(xs), tuple(rest[p] for p in hit))
    return None


def is_xcode(code, d: Optional[int] = None, x: Optional[int] = None) -> bool:
    return find_violation(code, d, x) is None


def check_constant_weight(code, w: int) -> bool:
    """True iff every column has exactly ``w`` ones."""
    blocks = code.blocks if isinstance(code, XCode) else code
    return all(bin(mask).count("1") == w for mask in _masks(blocks))
