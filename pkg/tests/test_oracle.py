import itertools
import random

import pytest

from xcodes.bounds import upper_bound_d1
from xcodes.catalog import enumerate_witnesses
from xcodes.columns import Triple, all_triples
from xcodes.errors import ResourceLimitError
from xcodes.oracle import forbidden_sets_bruteforce, max_code_exhaustive, violates_with
from xcodes.verify import is_xcode


@pytest.mark.parametrize("m,expected", [(3, 1), (4, 2), (5, 3), (6, 4), (7, 7)])
def test_d1_values(m, expected):
    res = max_code_exhaustive(m, 1, 2)
    assert res.max_n == expected
    assert res.example_code.n == expected and is_xcode(res.example_code, 1, 2)


def test_d1_against_ceiling():
    for m in range(3, 8):
        value, _ = upper_bound_d1(m)
        assert max_code_exhaustive(m, 1, 2).max_n <= value
    assert max_code_exhaustive(7, 1, 2).max_n == upper_bound_d1(7)[0]
    assert max_code_exhaustive(6, 1, 2).max_n < upper_bound_d1(6)[0]
    # m = 4 meets the ceiling of 2 only because two blocks are vacuously valid
    assert max_code_exhaustive(4, 1, 2).max_n == upper_bound_d1(4)[0]


@pytest.mark.parametrize("m", [5, 6])
@pytest.mark.parametrize("d", [1, 2])
def test_no_larger_family_exists(m, d):
    # plain scan of every family one larger than the reported optimum
    best = max_code_exhaustive(m, d, 2).max_n
    assert not any(is_xcode(list(f), d=d, x=2) for f in itertools.combinations(all_triples(m), best + 1))


def test_non_increasing_in_d():
    for m in range(3, 8):
        values = [max_code_exhaustive(m, d, 2).max_n for d in (1, 2, 3)]
        assert values == sorted(values, reverse=True)


def test_relabeling_invariance():
    rng = random.Random(3)
    for m, d in [(6, 2), (7, 1), (7, 3)]:
        res = max_code_exhaustive(m, d, 2)
        for _ in range(5):
            perm = list(range(m))
            rng.shuffle(perm)
            moved = [Triple(perm[p] for p in t) for t in res.example_code.blocks]
            assert is_xcode(moved, d=d, x=2)


def test_other_x_values():
    # x = 1 weight-3 codes: any two blocks meet in at most one point suffices for d = 1
    assert max_code_exhaustive(5, 1, 1).max_n >= 2
    res = max_code_exhaustive(6, 1, 0)
    assert res.max_n == 20  # every distinct nonzero column is allowed


def test_incremental_check_matches_full():
    rng = random.Random(9)
    for _ in range(200):
        fam = rng.sample(all_triples(6), rng.randint(0, 5))
        d, x = rng.randint(1, 3), rng.randint(0, 3)
        if not is_xcode(fam, d=d, x=x):
            continue
        new = rng.choice([t for t in all_triples(6) if t not in fam])
        assert violates_with(new.mask, [t.mask for t in fam], d, x) == (not is_xcode(fam + [new], d=d, x=x))


def test_guard():
    with pytest.raises(ResourceLimitError):
        max_code_exhaustive(10, 1, 2)
    with pytest.raises(ResourceLimitError):
        forbidden_sets_bruteforce(8, 1)
    with pytest.raises(ResourceLimitError):
        forbidden_sets_bruteforce(6, 4)


def test_guard_override_warns():
    with pytest.warns(RuntimeWarning):
        # m=10 is overridable; d=1 x=0 makes the search trivial
        res = max_code_exhaustive(10, 1, 0, max_m=10)
    assert res.max_n == 120


def test_bruteforce_small_cases():
    assert forbidden_sets_bruteforce(3, 2) == set()
    assert forbidden_sets_bruteforce(4, 1) == {frozenset(c) for c in itertools.combinations(all_triples(4), 3)}
    assert forbidden_sets_bruteforce(5, 2) == {w.triples for w in enumerate_witnesses(5, 2)}
