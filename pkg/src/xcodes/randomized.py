"""Random sampling of triples followed by deletion of forbidden configurations."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .bounds import optimal_p, recommended_p
from .catalog import witness_sets_within
from .columns import Triple, all_triples
from .verify import XCode, find_violation

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SampleRun:
    seed: int
    p: float
    sampled: frozenset
    violations_found: int
    deleted: tuple
    final_blocks: frozenset

    def record(self) -> dict:
        return {
            "method": "random",
            "seed": self.seed,
            "p": self.p,
            "sampled": len(self.sampled),
            "violations_found": self.violations_found,
            "deletions": len(self.deleted),
            "final_n": len(self.final_blocks),
        }


def sample_triples(m: int, p: float, seed: int) -> frozenset:
    """Include each triple on ``m`` points independently with probability ``p``.

    Draws one PCG64 uniform per triple in lexicographic order, so the result
    depends only on ``(m, p, seed)``.
    """
    if not 0 <= p <= 1:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    triples = all_triples(m)
    draws = np.random.default_rng(seed).random(len(triples))
    return frozenset(t for t, u in zip(triples, draws) if u < p)


def greedy_hitting_deletions(sets: list[frozenset]) -> list:
    """Delete members until no set survives, most-hit member first.

    Ties go to the smallest member. Each deletion kills at least one live
    set, so there are never more deletions than sets.
    """
    live = list(sets)
    deleted = []
    while live:
        hits = Counter(t for s in live for t in s)
        top = max(hits.values())
        victim = min(t for t, c in hits.items() if c == top)
        deleted.append(victim)
        live = [s for s in live if victim not in s]
    return deleted


def repair_with_log(blocks: Iterable, d: int) -> tuple[frozenset, list, int]:
    """Repair ``blocks``; also return the deletions and the violation count."""
    blocks = frozenset(Triple(b) for b in blocks)
    sets = witness_sets_within(sorted(blocks), d)
    deleted = greedy_hitting_deletions(sets)
    return blocks.difference(deleted), deleted, len(sets)


def repair(blocks: Iterable, d: int) -> frozenset:
    """A subset of ``blocks`` containing no forbidden configuration."""
    return repair_with_log(blocks, d)[0]


def construct_random(m: int, d: int, seed: int, p: Optional[float] = None, *,
                     optimize_p: bool = False) -> tuple[XCode, SampleRun]:
    if m < 3 or d < 2:
        raise ValueError(f"need m >= 3 and d >= 2, got m={m}, d={d}")
    if p is None:
        p = optimal_p(m, d) if optimize_p else recommended_p(m, d)
    sampled = sample_triples(m, p, seed)
    final, deleted, found = repair_with_log(sampled, d)
    code = XCode(m, d, 2, tuple(sorted(final)))
    witness = find_violation(code)
    if witness is not None:
        raise RuntimeError(f"repaired code still violates the X-code property: {witness}")
    log.debug("seed=%d p=%g sampled=%d violations=%d deleted=%d",
              seed, p, len(sampled), found, len(deleted))
    run = SampleRun(seed=seed, p=p, sampled=sampled, violations_found=found,
                    deleted=tuple(deleted), final_blocks=final)
    return XCode(m, d, 2, code.blocks, verified=True), run
