import itertools
import random

import pytest

from xcodes.catalog import (WitnessCatalog, enumerate_witnesses, find_role_partition, incident_witnesses,
                            is_forbidden_config, iter_witness_indices, predicted_catalog_bound,
                            span_bound, witness_sets_within)
from xcodes.columns import Triple, all_triples, odd_point_union
from xcodes.errors import ResourceLimitError
from xcodes.oracle import forbidden_sets_bruteforce


def test_worked_forbidden_example():
    a, b, c, d = 0, 1, 2, 3
    assert is_forbidden_config([(a, b, c), (b, c, d), (a, b, d)], 1)


def test_disjoint_triples_never_forbidden():
    for d in (1, 2, 3):
        assert not is_forbidden_config([(0, 1, 2), (3, 4, 5), (6, 7, 8)], d)


def test_four_triple_example():
    c = [(1, 2, 3), (4, 5, 6), (1, 4, 7), (2, 5, 7)]
    assert is_forbidden_config(c, 2)
    w = find_role_partition(c, 2)
    assert set(w.pair) == {Triple(1, 2, 3), Triple(4, 5, 6)}
    assert odd_point_union(w.tail) == {1, 2, 4, 5}
    # too many triples for d = 1
    assert not is_forbidden_config(c, 1)


def test_small_configs_are_not_forbidden():
    assert not is_forbidden_config([(0, 1, 2), (0, 1, 3)], 3)
    assert not is_forbidden_config([], 3)


def test_repeated_triples_rejected():
    with pytest.raises(ValueError):
        is_forbidden_config([(0, 1, 2), (2, 1, 0), (0, 1, 3)], 1)


@pytest.mark.parametrize("size,bound", [(3, 6), (4, 8), (5, 10), (6, 12), (7, 13), (8, 15)])
def test_span_bound(size, bound):
    assert span_bound(size) == bound


def test_span_bound_rejects_small():
    with pytest.raises(ValueError):
        span_bound(2)


def test_m4_d1_has_four_witnesses():
    found = list(enumerate_witnesses(4, 1))
    assert len(found) == 4
    assert {w.triples for w in found} == {frozenset(c) for c in itertools.combinations(all_triples(4), 3)}


def test_m3_is_empty():
    for d in (1, 2, 3):
        assert list(enumerate_witnesses(3, d)) == []
        assert list(incident_witnesses(Triple(0, 1, 2), 3, d)) == []


@pytest.mark.parametrize("m,d,count", [(5, 1, 110), (5, 2, 320), (6, 2, 5130)])
def test_counts_match_independent_brute_force(m, d, count):
    # counts frozen from a plain nested-loop scan over all small subsets
    assert sum(1 for _ in enumerate_witnesses(m, d)) == count


def test_incident_witnesses_m4():
    for t in all_triples(4):
        inc = list(incident_witnesses(t, 4, 1))
        assert len(inc) == 3
        assert all(t in w.triples for w in inc)


def test_incident_union_covers_catalog():
    m, d = 5, 2
    everything = {w.triples for w in enumerate_witnesses(m, d)}
    union = set()
    for t in all_triples(m):
        union |= {w.triples for w in incident_witnesses(t, m, d)}
    assert union == everything


@pytest.mark.parametrize("m,d", [(5, 1), (5, 2), (5, 3), (6, 1), (6, 2)])
def test_emitted_witnesses_are_valid_and_unique(m, d):
    seen = set()
    for w in enumerate_witnesses(m, d):
        assert w.triples not in seen
        seen.add(w.triples)
        assert len(w.triples) == w.size
        assert odd_point_union(w.tail) <= set(w.pair[0]) | set(w.pair[1])
        assert w.span() <= span_bound(w.size)
        assert is_forbidden_config(w.triples, d)
    assert seen == forbidden_sets_bruteforce(m, d)


def test_catalog_index_matches_stream():
    cat = WitnessCatalog(6, 2)
    assert cat.counts == {3: 780, 4: 4350}
    assert cat.triple_sets() == {w.triples for w in enumerate_witnesses(6, 2)}
    t = Triple(0, 2, 4)
    idx = cat.index_of(t)
    rows = {frozenset(cat.triples[i] for i in row) for arr in cat.incident(idx).values() for row in arr}
    assert rows == {w.triples for w in incident_witnesses(t, 6, 2)}


def test_sub_universe_equals_filtered_catalog():
    rng = random.Random(7)
    universe = rng.sample(all_triples(7), 14)
    inside = set(witness_sets_within(universe, 2))
    full = {w.triples for w in enumerate_witnesses(7, 2)}
    assert inside == {c for c in full if c <= set(universe)}


def test_ceiling_trips():
    masks = [t.mask for t in all_triples(6)]
    with pytest.raises(ResourceLimitError):
        list(iter_witness_indices(masks, 2, ceiling=100))


def test_ceiling_from_environment(monkeypatch):
    monkeypatch.setenv("XCODES_WITNESS_CEILING", "50")
    with pytest.raises(ResourceLimitError):
        WitnessCatalog(6, 2)


def test_predicted_bound_dominates_counts_once_m_covers_the_spans():
    from xcodes.bounds import subtracted_terms
    cat = WitnessCatalog(8, 2)
    for k, coeff in subtracted_terms(8, 2):
        assert cat.counts[k] <= coeff
    assert predicted_catalog_bound(10, 2) == 210 * 1140 + 45 * 367290


def test_predicted_bound_misses_small_spans_below_m():
    # C(6, 8) = 0, yet 4-configurations on 6 points exist
    assert predicted_catalog_bound(6, 2) < len(WitnessCatalog(6, 2))
