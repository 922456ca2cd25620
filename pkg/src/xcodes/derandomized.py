"""Deterministic construction by the method of conditional expectations.

Triples are decided one at a time in lexicographic order. Undecided
triples are treated as independent Bernoulli(p) picks, and each triple is
accepted only when acceptance strictly increases the conditional
expectation of ``|B| - |X|``. Here ``B`` is the picked family and ``X`` is
the set of forbidden configurations inside it. A final deletion pass then
clears the configurations that were realized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .bounds import optimal_p, recommended_p
from .catalog import WitnessCatalog, WitnessConfig
from .columns import Triple, all_triples, triple_index
from .errors import ResourceLimitError
from .randomized import repair_with_log
from .verify import XCode, find_violation

UNDECIDED, ACCEPTED, REJECTED = 0, 1, -1

# incremental sums this close to the accept/reject threshold are redone exactly
_TIE_BAND = 1e-9


@dataclass
class DecisionState:
    m: int
    d: int
    p: float
    order: tuple
    decisions: np.ndarray
    step: int = 0

    @classmethod
    def initial(cls, m: int, d: int, p: float) -> "DecisionState":
        if not 0 <= p <= 1:
            raise ValueError(f"probability must lie in [0, 1], got {p}")
        order = all_triples(m)
        return cls(m, d, p, order, np.zeros(len(order), dtype=np.int8))

    @property
    def done(self) -> bool:
        return self.step >= len(self.order)

    def commit(self, bit: int) -> None:
        if self.done:
            raise IndexError("every triple is already decided")
        self.decisions[self.step] = ACCEPTED if bit else REJECTED
        self.step += 1

    def accepted(self) -> list[Triple]:
        return [self.order[i] for i in np.flatnonzero(self.decisions == ACCEPTED)]


@dataclass(frozen=True)
class ConstructionCertificate:
    p: float
    e0: float
    realized_blocks: int
    realized_violations: int
    deletions: int
    final_n: int
    catalog_counts: dict
    e_trace: Optional[tuple] = field(default=None, repr=False)

    def record(self) -> dict:
        out = {
            "method": "derand",
            "p": self.p,
            "e0": self.e0,
            "realized_blocks": self.realized_blocks,
            "realized_violations": self.realized_violations,
            "deletions": self.deletions,
            "final_n": self.final_n,
            "catalog_counts": {str(k): v for k, v in sorted(self.catalog_counts.items())},
        }
        return out


def _member_indices(c, state: DecisionState) -> list[int]:
    if isinstance(c, WitnessConfig):
        index = triple_index(state.m)
        return [index[t] for t in c.pair + c.tail]
    return [int(i) for i in c]


def score_s(c: Union[WitnessConfig, tuple[int, ...]], state: DecisionState) -> float:
    """``p ** (|c| - accepted members)``, or 0 once any member is rejected."""
    status = state.decisions[_member_indices(c, state)]
    if (status == REJECTED).any():
        return 0.0
    return state.p ** int((status == UNDECIDED).sum())


def conditional_expectation(state: DecisionState, catalog: WitnessCatalog, *,
                            exact: bool = False) -> Union[float, Fraction]:
    """``E(|B| - |X|)`` given the decisions made so far.

    With ``exact=True`` the value is a :class:`Fraction` computed from the
    binary value of ``p``.
    """
    p = Fraction(state.p) if exact else state.p
    accepted = int((state.decisions == ACCEPTED).sum())
    undecided = int((state.decisions == UNDECIDED).sum())
    total = accepted + undecided * p
    for k, rows in catalog.members.items():
        if not len(rows):
            continue
        status = state.decisions[rows]
        alive = ~(status == REJECTED).any(axis=1)
        free = (status[alive] == UNDECIDED).sum(axis=1)
        counts = np.bincount(free, minlength=k + 1)
        for e, cnt in enumerate(counts):
            if cnt:
                total -= int(cnt) * p ** e
    return total


def incident_weight(state: DecisionState, catalog: WitnessCatalog, t: int, *,
                    exact: bool = False) -> Union[float, Fraction]:
    """Sum of ``p ** (other undecided members)`` over live configurations containing ``t``."""
    counts: dict[int, int] = {}
    for rows in catalog.incident(t).values():
        if not len(rows):
            continue
        status = state.decisions[rows]
        alive = ~(status == REJECTED).any(axis=1)
        free = (status[alive] == UNDECIDED).sum(axis=1) - (state.decisions[t] == UNDECIDED)
        for e, cnt in enumerate(np.bincount(free)):
            if cnt:
                counts[e] = counts.get(e, 0) + int(cnt)
    p = Fraction(state.p) if exact else state.p
    return sum((cnt * p ** e for e, cnt in counts.items()), Fraction(0) if exact else 0.0)


def _decide(state: DecisionState, catalog: WitnessCatalog) -> tuple[int, float]:
    w = incident_weight(state, catalog, state.step)
    if abs(w - 1) < _TIE_BAND:
        exact = incident_weight(state, catalog, state.step, exact=True)
        return int(exact < 1), float(exact)
    return int(w < 1), w


def decide_next(state: DecisionState, catalog: WitnessCatalog) -> int:
    """1 iff accepting the next triple strictly beats rejecting it.

    Accepting minus rejecting changes the expectation by ``1 - w``, where
    ``w`` is :func:`incident_weight` of the triple, so only configurations
    through the triple are inspected. Ties reject.
    """
    if state.done:
        raise IndexError("every triple is already decided")
    return _decide(state, catalog)[0]


def decide_next_full(state: DecisionState, catalog: WitnessCatalog) -> int:
    """Same decision as :func:`decide_next` from two full exact recomputations."""
    if state.done:
        raise IndexError("every triple is already decided")
    i = state.step
    saved = state.decisions[i]
    try:
        state.decisions[i] = ACCEPTED
        e1 = conditional_expectation(state, catalog, exact=True)
        state.decisions[i] = REJECTED
        e0 = conditional_expectation(state, catalog, exact=True)
    finally:
        state.decisions[i] = saved
    return int(e1 > e0)


def exact_e0(m: int, p: float, catalog: WitnessCatalog) -> Fraction:
    q = Fraction(p)
    return math.comb(m, 3) * q - sum(cnt * q ** k for k, cnt in catalog.counts.items())


def construct_derandomized(m: int, d: int, p: Optional[float] = None, *,
                           optimize_p: bool = False,
                           catalog: Optional[WitnessCatalog] = None,
                           trace: bool = True,
                           ceiling: Optional[int] = None) -> tuple[XCode, ConstructionCertificate]:
    """Build a verified weight-3 ``(m, n, d, 2)`` X-code deterministically.

    ``n`` is at least the initial conditional expectation ``e0`` whenever
    ``e0 > 0``. Raises :class:`~xcodes.errors.ResourceLimitError` when the
    catalog would exceed its ceiling.
    """
    if m < 3 or d < 2:
        raise ValueError(f"need m >= 3 and d >= 2, got m={m}, d={d}")
    if p is None:
        p = optimal_p(m, d) if optimize_p else recommended_p(m, d)
    if catalog is None:
        try:
            catalog = WitnessCatalog(m, d, ceiling=ceiling)
        except ResourceLimitError as exc:
            raise ResourceLimitError(f"forbidden-configuration catalog too large for m={m}, d={d} ({exc}); "
                                     "try a smaller m or the random method") from None
    elif (catalog.m, catalog.d) != (m, d):
        raise ValueError("catalog built for a different (m, d)")

    state = DecisionState.initial(m, d, p)
    e = conditional_expectation(state, catalog)
    e0 = e
    steps = [e] if trace else None
    while not state.done:
        bit, w = _decide(state, catalog)
        diff = 1 - w
        # the chosen branch never lowers the expectation: both increments are >= 0
        e = e + (1 - p) * diff if bit else e - p * diff
        state.commit(bit)
        if trace:
            steps.append(e)

    picked = state.accepted()
    chosen = np.zeros(len(state.order), dtype=bool)
    chosen[state.decisions == ACCEPTED] = True
    realized = sum(int(chosen[rows].all(axis=1).sum()) for rows in catalog.members.values() if len(rows))
    final, deleted, found = repair_with_log(picked, d)
    if found != realized:
        raise RuntimeError(f"repair saw {found} configurations, catalog has {realized}")

    code = XCode(m, d, 2, tuple(sorted(final)))
    witness = find_violation(code)
    if witness is not None:
        raise RuntimeError(f"constructed code violates the X-code property: {witness}")
    exact = exact_e0(m, p, catalog)
    if exact > 0 and len(final) < math.ceil(exact):
        raise RuntimeError(f"final size {len(final)} below guarantee {float(exact)}")

    cert = ConstructionCertificate(
        p=p, e0=float(e0), realized_blocks=len(picked), realized_violations=realized,
        deletions=len(deleted), final_n=len(final), catalog_counts=catalog.counts,
        e_trace=tuple(steps) if trace else None)
    return XCode(m, d, 2, code.blocks, verified=True), cert
