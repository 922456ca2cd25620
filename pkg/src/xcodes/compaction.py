"""X-compact response compaction over the alphabet {0, 1, X}."""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .verify import XCode

X = "X"
_SYMBOLS = {"0": 0, "1": 1, "X": X, "x": X}


class TernaryVector(tuple):
    """A response vector with entries 0, 1 or ``X``."""

    __slots__ = ()

    def __new__(cls, entries: Iterable = ()):
        if isinstance(entries, str):
            try:
                values = tuple(_SYMBOLS[ch] for ch in entries)
            except KeyError as exc:
                raise ValueError(f"invalid symbol {exc.args[0]!r} in {entries!r}") from None
        else:
            values = []
            for v in entries:
                if isinstance(v, str):
                    if v not in _SYMBOLS:
                        raise ValueError(f"invalid symbol {v!r}")
                    values.append(_SYMBOLS[v])
                elif v in (0, 1) and not isinstance(v, float):
                    values.append(int(v))
                else:
                    raise ValueError(f"invalid symbol {v!r}")
        return super().__new__(cls, values)

    def __str__(self) -> str:
        return "".join(str(v) for v in self)

    def __repr__(self) -> str:
        return f"TernaryVector({str(self)!r})"

    @property
    def unknown_positions(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self) if v is X)


def compact(code: XCode, v) -> TernaryVector:
    """Multiply ``v`` by the code matrix with X absorbing sums it touches."""
    v = TernaryVector(v)
    if len(v) != code.n:
        raise ValueError(f"vector of length {len(v)} for a code with n={code.n}")
    masks = code.masks()
    out = []
    for row in range(code.m):
        acc = 0
        for j, mask in enumerate(masks):
            if (mask >> row) & 1:
                if v[j] is X:
                    acc = X
                    break
                acc ^= v[j]
        out.append(acc)
    return TernaryVector(out)


def detect_discrepancy(u, w) -> bool:
    """True iff some position holds two different definite symbols."""
    u, w = TernaryVector(u), TernaryVector(w)
    if len(u) != len(w):
        raise ValueError(f"length mismatch: {len(u)} != {len(w)}")
    return any(a is not X and b is not X and a != b for a, b in zip(u, w))


def simulate_detection(code: XCode, expected, fault_positions: Iterable[int],
                       fill: Optional[Sequence[int]] = None) -> bool:
    """Whether flipping ``fault_positions`` of ``expected`` is always caught.

    The observed response replaces each X of ``expected`` by a definite
    value and flips the faulty bits. ``fill`` gives those values in X order.
    By default every filling is tried and the result is True only if all of
    them are detected.
    """
    expected = TernaryVector(expected)
    faults = sorted(set(fault_positions))
    if len(expected) != code.n:
        raise ValueError(f"vector of length {len(expected)} for a code with n={code.n}")
    unknown = expected.unknown_positions
    for f in faults:
        if not 0 <= f < code.n:
            raise ValueError(f"fault position {f} out of range")
        if expected[f] is X:
            raise ValueError(f"fault at position {f} which is unknowable")
    if not faults:
        return False
    target = compact(code, expected)
    fills = [tuple(fill)] if fill is not None else itertools.product((0, 1), repeat=len(unknown))
    for values in fills:
        if len(values) != len(unknown):
            raise ValueError(f"fill has {len(values)} values for {len(unknown)} unknowns")
        observed = list(expected)
        for pos, val in zip(unknown, values):
            observed[pos] = val
        for f in faults:
            observed[f] ^= 1
        if not detect_discrepancy(compact(code, observed), target):
            return False
    return True
