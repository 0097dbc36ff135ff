import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import naive_violations
from helly import (
    BudgetExceeded,
    InputError,
    SetFamily,
    exhaustive_verify_bound,
    extremal_family,
    find_redundant_union_witness,
    lemma_condition_holds,
)
from helly.set_family import candidate_masks


def fam(q, *members):
    return SetFamily.from_sets(q, members)


def test_condition_examples():
    assert lemma_condition_holds(fam(3, [1], [1, 2])).holds
    v = lemma_condition_holds(fam(2, [1], [1]))
    assert not v.holds and v.violating == (1, 2)
    assert lemma_condition_holds(fam(3, [1], [1, 2], [3], [2, 3])).holds


def test_witness_examples():
    assert find_redundant_union_witness(fam(2, [1], [1])) == ((1, 2), frozenset({1}))
    for q in range(2, 9):
        assert find_redundant_union_witness(extremal_family(q)) is None


def test_witness_fixture_q3():
    # recorded from an exhaustive scan over all 31 non-empty I
    f = fam(3, [1, 2], [2, 3], [1, 3], [1], [2])
    assert find_redundant_union_witness(f) == ((1, 4, 5), frozenset({1, 2}))
    assert lemma_condition_holds(f).violating == (1, 4, 5)
    assert min(naive_violations(3, f.members), key=lambda i: (len(i), i)) == (1, 4, 5)


def test_extremal_examples():
    assert extremal_family(2).members == (frozenset({1}), frozenset({2}))
    assert set(extremal_family(4).members) == {
        frozenset(s) for s in ({1}, {1, 2}, {1, 2, 3}, {4}, {4, 3}, {4, 3, 2})
    }
    f = extremal_family(10)
    assert f.p == 18 and lemma_condition_holds(f).holds
    with pytest.raises(InputError):
        extremal_family(1)


def test_member_validation():
    with pytest.raises(InputError):
        fam(3, [])
    with pytest.raises(InputError):
        fam(3, [1, 2, 3])
    with pytest.raises(InputError):
        fam(3, [4])
    with pytest.raises(InputError):
        fam(3, [0, 1])


def test_member_budget():
    f = SetFamily.from_sets(2, [[1]] * 25)
    with pytest.raises(BudgetExceeded):
        lemma_condition_holds(f)
    with pytest.raises(BudgetExceeded):
        find_redundant_union_witness(f)


def test_exhaustive_small():
    assert exhaustive_verify_bound(2).families_checked == 0
    r = exhaustive_verify_bound(3)
    assert (r.families_checked, r.family_size) == (6, 5)
    assert r.summary() == "q=3: 6 families of size 5 checked (exhaustive), all fail condition"
    with pytest.raises(InputError):
        exhaustive_verify_bound(5)
    with pytest.raises(InputError):
        exhaustive_verify_bound(17, samples=10)


def test_exhaustive_threads_agree():
    assert exhaustive_verify_bound(4, threads=2).families_checked == exhaustive_verify_bound(4).families_checked == comb(14, 7)


def test_sampled_q5_deterministic():
    a = exhaustive_verify_bound(5, samples=200, seed=3)
    b = exhaustive_verify_bound(5, samples=200, seed=3)
    assert a == b and a.families_checked == 200 and a.mode == "sampled"


@st.composite
def set_families(draw):
    q = draw(st.integers(2, 5))
    cands = candidate_masks(q)
    masks = draw(st.lists(st.sampled_from(cands), min_size=1, max_size=8))
    return SetFamily(q, tuple(masks))


@given(set_families())
def test_condition_matches_definition(f):
    bad = naive_violations(f.q, f.members)
    verdict = lemma_condition_holds(f)
    assert verdict.holds == (not bad)
    if bad:
        assert verdict.violating == min(bad)
        best = min(bad, key=lambda i: (len(i), i))
        idx, union = find_redundant_union_witness(f)
        assert idx == best
        assert union == f.union(idx)
    else:
        assert find_redundant_union_witness(f) is None


@given(set_families())
def test_violation_is_valid_witness(f):
    verdict = lemma_condition_holds(f)
    if verdict.holds:
        return
    i = verdict.violating
    union = f.union(i)
    assert union != frozenset(range(1, f.q + 1))
    for j in i:
        assert f.union([k for k in i if k != j]) == union


@given(st.integers(2, 60), st.integers(0, 2**32))
def test_large_q_witness_search(q, seed):
    # planted duplicate makes a witness; pruned search must still find one
    rng = random.Random(seed)
    members = [[rng.randint(1, q)] for _ in range(6)]
    members.append(members[0])
    f = SetFamily.from_sets(q, members)
    found = find_redundant_union_witness(f)
    if q > 1 and len({m[0] for m in members}) < q:
        assert found is not None
        idx, union = found
        assert union == f.union(idx)
