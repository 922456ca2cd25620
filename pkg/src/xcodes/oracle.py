"""Brute-force ground truth for tiny instances."""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .catalog import is_forbidden_config
from .columns import Triple, all_triples
from .errors import ResourceLimitError
from .verify import XCode, first_xor_subset, is_xcode

MAX_SEARCH_M = 9
MAX_BRUTE_M = 7
MAX_BRUTE_D = 3


@dataclass(frozen=True)
class OracleResult:
    m: int
    d: int
    x: int
    max_n: int
    witnesses_checked: int
    example_code: XCode

    def record(self) -> dict:
        return {
            "m": self.m,
            "d": self.d,
            "x": self.x,
            "max_n": self.max_n,
            "witnesses_checked": self.witnesses_checked,
            "example_blocks": [[p + 1 for p in t] for t in self.example_code.blocks],
        }


def violates_with(new: int, family: list[int], d: int, x: int) -> bool:
    """True iff adding column ``new`` to a valid ``family`` creates a violation.

    Only violations using ``new`` are examined, either inside the covering
    ``x`` columns or inside the covered sum.
    """
    n = len(family)
    if n + 1 <= x:
        return False
    if x >= 1:
        for others in itertools.combinations(range(n), x - 1):
            cover = new
            for i in others:
                cover |= family[i]
            used = set(others)
            rest = [family[j] & ~cover for j in range(n) if j not in used]
            for k in range(1, min(d, len(rest)) + 1):
                if first_xor_subset(rest, k) is not None:
                    return True
    if n >= x:
        for xs in itertools.combinations(range(n), x):
            cover = 0
            for i in xs:
                cover |= family[i]
            used = set(xs)
            target = new & ~cover
            rest = [family[j] & ~cover for j in range(n) if j not in used]
            for k in range(0, min(d - 1, len(rest)) + 1):
                if first_xor_subset(rest, k, target) is not None:
                    return True
    return False


def max_code_exhaustive(m: int, d: int, x: int, *, max_m: int = MAX_SEARCH_M) -> OracleResult:
    """Exact maximum number of triples forming an ``(m, n, d, x)`` X-code.

    Branch and bound over lexicographically ordered triples. Each branch
    keeps only candidates that stay compatible with the partial family, and
    a branch is cut once the family plus its candidates cannot beat the
    incumbent. The first block is fixed to ``{0, 1, 2}`` by point-relabeling
    symmetry.
    """
    if m > max_m:
        raise ResourceLimitError(f"m={m} exceeds the search guard {max_m}")
    if m > MAX_SEARCH_M:
        warnings.warn(f"exhaustive search at m={m} may take very long", RuntimeWarning)
    if d < 1 or x < 0:
        raise ValueError(f"need d >= 1 and x >= 0, got d={d}, x={x}")
    triples = all_triples(m)
    if not triples:
        return OracleResult(m, d, x, 0, 0, XCode(m, d, x, ()))

    checks = 0
    best: list[int] = []

    def compatible(fam: list[int], cands: list[int]) -> list[int]:
        nonlocal checks
        checks += len(cands)
        return [c for c in cands if not violates_with(c, fam, d, x)]

    def expand(fam: list[int], cands: list[int]) -> None:
        nonlocal best
        if len(fam) > len(best):
            best = list(fam)
        for pos, c in enumerate(cands):
            if len(fam) + len(cands) - pos <= len(best):
                return
            nxt = fam + [c]
            expand(nxt, compatible(nxt, cands[pos + 1:]))

    first = triples[0].mask
    expand([first], compatible([first], [t.mask for t in triples[1:]]))
    blocks = tuple(sorted(Triple.from_mask(mk) for mk in best))
    code = XCode(m, d, x, blocks)
    if not is_xcode(code):
        raise RuntimeError("search produced an invalid code")
    return OracleResult(m, d, x, len(blocks), checks, XCode(m, d, x, blocks, verified=True))


def forbidden_sets_bruteforce(m: int, d: int, *, max_m: int = MAX_BRUTE_M,
                              max_d: int = MAX_BRUTE_D) -> set[frozenset]:
    """All forbidden configurations, found by scanning every small subset."""
    if m > max_m or d > max_d:
        raise ResourceLimitError(f"brute force limited to m <= {max_m}, d <= {max_d}")
    triples = all_triples(m)
    found = set()
    for size in range(3, d + 3):
        for combo in itertools.combinations(triples, size):
            if is_forbidden_config(combo, d):
                found.add(frozenset(combo))
    return found


def count_subsets_scanned(m: int, d: int) -> int:
    n = math.comb(m, 3)
    return sum(math.comb(n, k) for k in range(3, d + 3))
