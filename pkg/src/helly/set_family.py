"""Families of non-empty proper subsets of [q] and the redundant-union condition.

A family satisfies the *union condition* when every non-empty index set I
either covers [q] or has a member contributing an element no other member of
I contains.  Families that satisfy it have at most 2q - 2 members, and the two
nested chains from ``extremal_family`` reach that size.

Subsets are bitmasks: element x of [q] is bit x - 1.  All index sets exposed
by the public functions are 1-based.

The key reformulation used throughout: I violates the condition exactly when
its union U is a proper subset and every element of U lies in at least two
members of I.  Tracking "covered once" and "covered twice" masks makes every
check O(1) per member.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .budgets import MAX_SET_FAMILY_MEMBERS
from .errors import BudgetExceeded, ContradictionError, InputError

__all__ = [
    "SetFamily",
    "Verdict",
    "BoundReport",
    "lemma_condition_holds",
    "find_redundant_union_witness",
    "extremal_family",
    "exhaustive_verify_bound",
    "candidate_masks",
]

MAX_Q = 63
# Above this ground-set size the 2^q union scan is replaced by search over I.
_UNION_SCAN_MAX_Q = 16


def _mask(members: Iterable[int]) -> int:
    m = 0
    for x in members:
        m |= 1 << (x - 1)
    return m


def _elements(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class SetFamily:
    q: int
    masks: tuple[int, ...]

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 1:
            raise InputError(f"q must be a positive integer, got {self.q!r}")
        if self.q > MAX_Q:
            raise InputError(f"q = {self.q} exceeds the supported maximum {MAX_Q}")
        full = (1 << self.q) - 1
        for k, m in enumerate(self.masks):
            if m & ~full:
                raise InputError(f"member {k + 1} is not a subset of [{self.q}]")
            if m == 0:
                raise InputError(f"member {k + 1} is empty")
            if m == full:
                raise InputError(f"member {k + 1} is all of [{self.q}]")

    @classmethod
    def from_sets(cls, q: int, members: Iterable[Iterable[int]]) -> SetFamily:
        masks = []
        for k, s in enumerate(members):
            s = list(s)
            if any(isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= q for x in s):
                raise InputError(f"member {k + 1} = {s} is not a subset of [{q}]")
            masks.append(_mask(s))
        return cls(q, tuple(masks))

    @property
    def p(self) -> int:
        return len(self.masks)

    @property
    def full(self) -> int:
        return (1 << self.q) - 1

    @property
    def members(self) -> tuple[frozenset[int], ...]:
        return tuple(_elements(m) for m in self.masks)

    @property
    def has_duplicates(self) -> bool:
        return len(set(self.masks)) != len(self.masks)

    def union(self, indices: Iterable[int]) -> frozenset[int]:
        """Union of the members at the given 1-based indices."""
        u = 0
        for i in indices:
            u |= self.masks[i - 1]
        return _elements(u)

    def with_member(self, members: Iterable[int]) -> SetFamily:
        return SetFamily(self.q, self.masks + (_mask(members),))

    def to_json(self) -> dict:
        return {"q": self.q, "members": [sorted(s) for s in self.members]}


@dataclass(frozen=True)
class Verdict:
    holds: bool
    violating: tuple[int, ...] | None = None

    def __bool__(self):
        return self.holds


def _check_budget(fam: SetFamily, max_members):
    cap = MAX_SET_FAMILY_MEMBERS if max_members is None else max_members
    if fam.p > cap:
        raise BudgetExceeded(f"{fam.p} members exceeds the exponent budget of {cap}")


def _completable(masks, full, once, twice, start, nonempty) -> bool:
    """Can indices >= start be added to the current choice to reach a violation?"""
    if nonempty and once == twice and once != full:
        return True
    p = len(masks)
    rest = range(start, p)
    if full.bit_length() <= _UNION_SCAN_MAX_Q:
        # For a target union V, taking every remaining member inside V is optimal.
        free = full & ~once
        sub = free
        while True:
            v = once | sub
            if v != full:
                o, t = once, twice
                for i in rest:
                    m = masks[i]
                    if m & ~v == 0:
                        t |= o & m
                        o |= m
                if o and o == t:
                    return True
            if sub == 0:
                return False
            sub = (sub - 1) & free
    # Plain search; a full union can never shrink again.
    for i in rest:
        m = masks[i]
        o = once | m
        if o != full and _completable(masks, full, o, twice | (once & m), i + 1, True):
            return True
    return False


def _violation_exists(masks, full) -> bool:
    return _completable(masks, full, 0, 0, 0, False)


def _lex_least_violation(masks, full):
    chosen, once, twice, start = [], 0, 0, 0
    if not _violation_exists(masks, full):
        return None
    while not (chosen and once == twice and once != full):
        for i in range(start, len(masks)):
            m = masks[i]
            o, t = once | m, twice | (once & m)
            if o != full and _completable(masks, full, o, t, i + 1, True):
                chosen.append(i)
                once, twice, start = o, t, i + 1
                break
        else:  # pragma: no cover - guarded by the existence check
            raise AssertionError("lost track of a violating set")
    return tuple(chosen)


def lemma_condition_holds(fam: SetFamily, max_members: int | None = None) -> Verdict:
    """Check the union condition over all non-empty index sets.

    When it fails, the lexicographically least violating index set (1-based,
    compared as sorted tuples) is attached.
    """
    _check_budget(fam, max_members)
    found = _lex_least_violation(fam.masks, fam.full)
    if found is None:
        return Verdict(True)
    return Verdict(False, tuple(i + 1 for i in found))


def find_redundant_union_witness(fam: SetFamily, max_members: int | None = None):
    """Smallest (then lexicographically least) I whose union M is proper and
    unchanged by dropping any single member.  Returns ``(I, M)`` or None."""
    _check_budget(fam, max_members)
    masks, full = fam.masks, fam.full
    if not _violation_exists(masks, full):
        return None
    p = len(masks)

    def search(start, left, once, twice, chosen):
        if left == 0:
            return chosen if once == twice else None
        for i in range(start, p - left + 1):
            m = masks[i]
            o = once | m
            if o == full:
                continue
            hit = search(i + 1, left - 1, o, twice | (once & m), chosen + (i,))
            if hit is not None:
                return hit
        return None

    for size in range(2, p + 1):
        hit = search(0, size, 0, 0, ())
        if hit is not None:
            return tuple(i + 1 for i in hit), fam.union(i + 1 for i in hit)
    raise AssertionError("existence check and size search disagree")  # pragma: no cover


def extremal_family(q: int) -> SetFamily:
    """{1}, {1,2}, ..., {1..q-1} followed by {q}, {q,q-1}, ..., {q..2}."""
    if isinstance(q, bool) or not isinstance(q, int) or q < 2:
        raise InputError(f"extremal family needs q >= 2, got {q!r}")
    low = [list(range(1, k + 1)) for k in range(1, q)]
    high = [list(range(q, q - k, -1)) for k in range(1, q)]
    return SetFamily.from_sets(q, low + high)


def candidate_masks(q: int) -> list[int]:
    """All non-empty proper subsets of [q], as masks in increasing order."""
    return list(range(1, (1 << q) - 1))


@dataclass(frozen=True)
class BoundReport:
    q: int
    family_size: int
    candidates: int
    families_checked: int
    mode: str
    seed: int | None = None

    def summary(self) -> str:
        return (
            f"q={self.q}: {self.families_checked} families of size {self.family_size} checked "
            f"({self.mode}), all fail condition"
        )


def _count_failures(q, families) -> int:
    full = (1 << q) - 1
    checked = 0
    for fam in families:
        if not _violation_exists(fam, full):
            raise ContradictionError(
                f"family of {len(fam)} subsets of [{q}] satisfies the union condition: "
                f"{[sorted(_elements(m)) for m in fam]}",
                evidence={"q": q, "members": [sorted(_elements(m)) for m in fam]},
            )
        checked += 1
    return checked


def _chunk(q, cands, size, first):
    tail = [c for c in cands if c > first]
    return _count_failures(q, ((first,) + rest for rest in itertools.combinations(tail, size - 1)))


def exhaustive_verify_bound(q: int, samples: int | None = None, seed: int = 0, threads: int = 1) -> BoundReport:
    """Check that no family of 2q - 1 distinct candidates satisfies the condition.

    q <= 4 is exhaustive; q in [5, 16] requires ``samples``.  A satisfying
    family would refute the bound and raises ``ContradictionError``.
    """
    if isinstance(q, bool) or not isinstance(q, int) or q < 1 or q > 16:
        raise InputError(f"q must be in [1, 16], got {q!r}")
    cands = candidate_masks(q)
    size = 2 * q - 1
    if samples is None:
        if q > 4:
            raise InputError(f"q = {q} is too large for exhaustion; pass a sample count")
        if size > len(cands):
            return BoundReport(q, size, len(cands), 0, "exhaustive")
        if threads > 1:
            from concurrent.futures import ProcessPoolExecutor

            firsts = cands[: len(cands) - size + 1]
            with ProcessPoolExecutor(threads) as pool:
                checked = sum(pool.map(_chunk, *zip(*[(q, cands, size, f) for f in firsts])))
        else:
            checked = _count_failures(q, itertools.combinations(cands, size))
        assert checked == comb(len(cands), size)
        return BoundReport(q, size, len(cands), checked, "exhaustive")
    if samples < 1:
        raise InputError("sample count must be positive")
    if size > len(cands):
        return BoundReport(q, size, len(cands), 0, "sampled", seed)
    rng = random.Random(seed)
    families = (tuple(sorted(rng.sample(cands, size))) for _ in range(samples))
    return BoundReport(q, size, len(cands), _count_failures(q, families), "sampled", seed)
