"""Forbidden configurations of weight-3 codes with two unknowables.

A family of triples fails to be an ``(m, n, d, 2)`` X-code exactly when it
contains a pair ``{A1, A2}`` and a further set ``S`` of ``1..d`` triples
whose odd-point union lies inside ``A1 | A2``. Such a pair-plus-tail set is a
witness configuration; this module tests, enumerates and indexes them.

Enumeration runs over pairs and generates tails by a depth-first search on
the part of each triple lying outside the pair union: those outside parts
must cancel under XOR, which prunes almost everything. Each triple set is
emitted once, from its lexicographically smallest valid pair.
"""

from __future__ import annotations

import bisect
import itertools
import math
import os
from array import array
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .columns import Triple, all_triples, popcount, triple_index
from .errors import ResourceLimitError

DEFAULT_CEILING = 10**8
CEILING_ENV = "XCODES_WITNESS_CEILING"


def witness_ceiling() -> int:
    """Resource ceiling on emitted witnesses, overridable by environment."""
    raw = os.environ.get(CEILING_ENV)
    return int(raw) if raw else DEFAULT_CEILING


@dataclass(frozen=True)
class WitnessConfig:
    """A forbidden configuration with one valid role partition attached."""

    pair: tuple[Triple, Triple]
    tail: tuple[Triple, ...]

    @property
    def triples(self) -> frozenset[Triple]:
        return frozenset(self.pair + self.tail)

    @property
    def size(self) -> int:
        return 2 + len(self.tail)

    @property
    def key(self) -> tuple[Triple, ...]:
        return tuple(sorted(self.pair + self.tail))

    def span(self) -> int:
        mask = 0
        for t in self.pair + self.tail:
            mask |= t.mask
        return popcount(mask)


def span_bound(config_size: int) -> int:
    """Largest number of points a forbidden ``config_size``-configuration spans."""
    if config_size < 3:
        raise ValueError(f"configurations have at least 3 triples, got {config_size}")
    if config_size == 3:
        return 6
    if config_size == 4:
        return 8
    i = config_size - 2
    return 6 + (3 * i) // 2  # == 6 + ceil((3i - 1) / 2)


def _valid_pair(masks: Sequence[int], a: int, b: int) -> bool:
    cover = masks[a] | masks[b]
    acc = 0
    for k, mk in enumerate(masks):
        if k != a and k != b:
            acc ^= mk
    return acc & ~cover == 0


def find_role_partition(c: Iterable, d: int) -> Optional[WitnessConfig]:
    """A role partition of all of ``c`` into a pair and a tail, if one exists."""
    triples = sorted({Triple(t) for t in c})
    size = len(triples)
    if size < 3 or size - 2 > d:
        return None
    masks = [t.mask for t in triples]
    for a, b in itertools.combinations(range(size), 2):
        if _valid_pair(masks, a, b):
            tail = tuple(t for k, t in enumerate(triples) if k != a and k != b)
            return WitnessConfig((triples[a], triples[b]), tail)
    return None


def is_forbidden_config(c: Iterable, d: int) -> bool:
    """True iff ``c`` splits into a pair and a tail of ``|c| - 2 <= d`` triples
    whose odd-point union lies inside the pair union.
    """
    items = list(c)
    if len({Triple(t) for t in items}) != len(items):
        raise ValueError("configuration has repeated triples")
    return find_role_partition(items, d) is not None


def iter_witness_indices(masks: Sequence[int], d: int, *, check_span: bool = True,
                         ceiling: Optional[int] = None) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    """Stream witness configurations over a universe of triple masks.

    Yields ``(a, b, tail)`` with ``a < b`` the pair and ``tail`` an ascending
    tuple of universe positions. Every distinct triple set is yielded once.
    ``masks`` must be distinct.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    ceiling = witness_ceiling() if ceiling is None else ceiling
    n = len(masks)
    full = 0
    for mk in masks:
        full |= mk
    emitted = 0
    for a in range(n):
        for b in range(a + 1, n):
            cover = masks[a] | masks[b]
            outside_mask = full & ~cover
            cands = [k for k in range(n) if k != a and k != b]
            outs = [masks[k] & outside_mask for k in cands]
            where: dict[int, list[int]] = {}
            for pos, o in enumerate(outs):
                where.setdefault(o, []).append(pos)
            for size in range(1, min(d, len(cands)) + 1):
                for tail_pos in _tails(outs, where, size):
                    tail = tuple(cands[p] for p in tail_pos)
                    if not _is_canonical(masks, a, b, tail):
                        continue
                    if check_span:
                        _check_span(masks, a, b, tail)
                    emitted += 1
                    if emitted > ceiling:
                        raise ResourceLimitError(
                            f"more than {ceiling} witness configurations; "
                            f"raise {CEILING_ENV} or use a smaller instance")
                    yield a, b, tail


def _tails(outs: Sequence[int], where: dict, size: int) -> Iterator[tuple[int, ...]]:
    # Depth-first over ascending positions; the XOR of outside parts must
    # vanish, and a partial XOR of popcount > 3 * remaining is uncancellable.
    count = len(outs)

    def rec(start: int, need: int, acc: int, chosen: tuple[int, ...]):
        if need == 1:
            hits = where.get(acc)
            if hits:
                for i in range(bisect.bisect_left(hits, start), len(hits)):
                    yield chosen + (hits[i],)
            return
        limit = 3 * (need - 1)
        for pos in range(start, count - need + 1):
            nxt = acc ^ outs[pos]
            if popcount(nxt) <= limit:
                yield from rec(pos + 1, need - 1, nxt, chosen + (pos,))

    return rec(0, size, 0, ())


def _is_canonical(masks: Sequence[int], a: int, b: int, tail: tuple[int, ...]) -> bool:
    members = sorted((a, b) + tail)
    sub = [masks[k] for k in members]
    for i, j in itertools.combinations(range(len(members)), 2):
        pa, pb = members[i], members[j]
        if (pa, pb) >= (a, b):
            return True
        if _valid_pair(sub, i, j):
            return False
    return True


def _check_span(masks, a, b, tail) -> None:
    mask = masks[a] | masks[b]
    for k in tail:
        mask |= masks[k]
    size = 2 + len(tail)
    if popcount(mask) > span_bound(size):
        raise AssertionError(f"configuration of size {size} spans {popcount(mask)} points")


def _check_instance(m: int, d: int) -> None:
    if m < 3 or d < 1:
        raise ValueError(f"need m >= 3 and d >= 1, got m={m}, d={d}")


def enumerate_witnesses(m: int, d: int, *, ceiling: Optional[int] = None) -> Iterator[WitnessConfig]:
    """Every forbidden configuration on ``m`` points for detection parameter ``d``."""
    _check_instance(m, d)
    triples = all_triples(m)
    masks = [t.mask for t in triples]
    for a, b, tail in iter_witness_indices(masks, d, ceiling=ceiling):
        yield WitnessConfig((triples[a], triples[b]), tuple(triples[k] for k in tail))


def incident_witnesses(t: Triple, m: int, d: int, *, ceiling: Optional[int] = None) -> Iterator[WitnessConfig]:
    """The witnesses whose triple set contains ``t``."""
    t = Triple(t)
    for w in enumerate_witnesses(m, d, ceiling=ceiling):
        if t in w.pair or t in w.tail:
            yield w


def witness_sets_within(blocks: Sequence[Triple], d: int) -> list[frozenset[Triple]]:
    """Distinct witness triple sets contained in ``blocks``."""
    ordered = sorted({Triple(b) for b in blocks})
    masks = [t.mask for t in ordered]
    return [frozenset(ordered[k] for k in (a, b) + tail)
            for a, b, tail in iter_witness_indices(masks, d)]


class WitnessCatalog:
    """All witness sets for ``(m, d)``, stored as triple-index arrays.

    ``members[k]`` is an ``(N_k, k)`` int32 array of ascending lexicographic
    triple indices, one row per configuration of size ``k``; ``incident``
    gives the rows of each size containing a given triple.
    """

    def __init__(self, m: int, d: int, *, ceiling: Optional[int] = None):
        _check_instance(m, d)
        self.m = m
        self.d = d
        self.triples = all_triples(m)
        masks = [t.mask for t in self.triples]
        flat = {k: array("i") for k in range(3, d + 3)}
        for a, b, tail in iter_witness_indices(masks, d, ceiling=ceiling):
            flat[2 + len(tail)].extend(sorted((a, b) + tail))
        self.members: dict[int, np.ndarray] = {}
        self._offsets: dict[int, np.ndarray] = {}
        self._rows: dict[int, np.ndarray] = {}
        n_triples = len(self.triples)
        for k, buf in flat.items():
            rows = np.frombuffer(buf, dtype=np.int32).reshape(-1, k).copy() if len(buf) else np.zeros((0, k), np.int32)
            self.members[k] = rows
            owner = np.repeat(np.arange(len(rows), dtype=np.int32), k)
            order = np.argsort(rows.ravel(), kind="stable")
            self._rows[k] = owner[order]
            self._offsets[k] = np.searchsorted(rows.ravel()[order], np.arange(n_triples + 1))

    @property
    def counts(self) -> dict[int, int]:
        return {k: len(rows) for k, rows in self.members.items()}

    def __len__(self) -> int:
        return sum(self.counts.values())

    def incident(self, t: int) -> dict[int, np.ndarray]:
        """Per size, member rows of the configurations containing triple index ``t``."""
        return {k: self.members[k][self._rows[k][self._offsets[k][t]:self._offsets[k][t + 1]]]
                for k in self.members}

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for k in sorted(self.members):
            for row in self.members[k]:
                yield tuple(int(v) for v in row)

    def triple_sets(self) -> set[frozenset[Triple]]:
        return {frozenset(self.triples[i] for i in row) for row in self}

    def index_of(self, t: Triple) -> int:
        return triple_index(self.m)[Triple(t)]


def predicted_catalog_bound(m: int, d: int) -> int:
    """Upper bound on the number of witness sets from the span bound."""
    total = 0
    for size in range(3, d + 3):
        span = span_bound(size)
        total += math.comb(m, span) * math.comb(math.comb(span, 3), size)
    return total
