"""Common invariant subspaces.

When one operator A0 of a family has d distinct eigenvalues in K, every
subspace it leaves invariant is spanned by a subset of its eigenvectors.  That
turns leave-one-out invariant subspaces into subsets of [d], and a redundant
union among those subsets gives a subspace invariant under the whole family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .budgets import charge, enumeration_budget
from .errors import InputError, PreconditionError, VerificationError, WitnessNotFound
from .fields import Field, Scalar
from .linalg import Matrix, Subspace, _eigen_cached, _rref, _solve_raw, inverse, is_invariant
from .set_family import SetFamily, find_redundant_union_witness
from .spectra import OperatorFamily

__all__ = [
    "DistinctSpectrumBasis",
    "SupportUnionResult",
    "distinct_spectrum_basis",
    "invariant_support",
    "support_union_pipeline",
    "common_invariant_from_supports",
    "operator_family_linear_basis",
    "enumerate_subspaces",
    "count_subspaces",
    "brute_force_common_invariant",
]


@dataclass(frozen=True)
class DistinctSpectrumBasis:
    name: str
    matrix: Matrix
    eigenvalues: tuple[Scalar, ...]
    eigenvectors: tuple[Matrix, ...]
    change_of_basis: Matrix  # eigenvectors as columns
    inverse: Matrix

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def span(self, support) -> Subspace:
        """span(v_i : i in support), 1-based indices."""
        return Subspace(self.matrix.field, self.dim, [self.eigenvectors[i - 1] for i in sorted(support)])


def distinct_spectrum_basis(a: Matrix, name: str = "A0") -> DistinctSpectrumBasis | None:
    """Eigenbasis of ``a`` when it has d pairwise distinct eigenvalues in K."""
    if not a.is_square():
        raise InputError(f"operator must be square, got {a.shape}")
    eig = _eigen_cached(a)
    if len(eig) != a.rows:
        return None
    values = tuple(lam for lam, _ in eig)
    vectors = tuple(space.vectors()[0] for _, space in eig)
    p = Matrix._raw(a.field, list(zip(*(v._data[0] for v in vectors))), a.rows)
    return DistinctSpectrumBasis(name, a, values, vectors, p, inverse(p))


def invariant_support(basis: DistinctSpectrumBasis, h: Subspace) -> frozenset[int]:
    """The unique I with h = span(v_i : i in I) for an invariant, non-trivial h."""
    if h.field != basis.matrix.field or h.ambient != basis.dim:
        raise InputError("subspace does not live in the operator's space")
    if not h.is_nontrivial():
        raise PreconditionError(f"subspace of dimension {h.dim} in K^{h.ambient} is trivial")
    if not is_invariant(basis.matrix, h):
        raise PreconditionError(f"subspace is not invariant under {basis.name}")
    coords = basis.inverse @ h.basis.T
    support = frozenset(
        i + 1 for i in range(basis.dim) if any(coords._data[i][k] for k in range(h.dim))
    )
    if len(support) != h.dim or basis.span(support) != h:
        raise VerificationError("invariant subspace is not a coordinate span of the eigenbasis")
    return support


@dataclass(frozen=True)
class SupportUnionResult:
    subspace: Subspace
    supports: tuple[frozenset[int], ...]  # one per non-A0 operator, family order
    witness: tuple[int, ...]  # 1-based positions into ``supports``
    union: frozenset[int]
    basis: DistinctSpectrumBasis


def _leave_one_out_list(fam: OperatorFamily, a0_index: int, leave_one_out):
    others = [i for i in range(len(fam)) if i != a0_index]
    if isinstance(leave_one_out, Mapping):
        missing = [fam.names[i] for i in others if fam.names[i] not in leave_one_out]
        if missing:
            raise PreconditionError(f"no leave-one-out subspace for {', '.join(missing)}")
        return others, [leave_one_out[fam.names[i]] for i in others]
    leave_one_out = list(leave_one_out)
    if len(leave_one_out) != len(others):
        raise PreconditionError(
            f"expected {len(others)} leave-one-out subspaces (one per operator other than A0), "
            f"got {len(leave_one_out)}"
        )
    return others, leave_one_out


def support_union_pipeline(fam: OperatorFamily, a0_index: int, leave_one_out) -> SupportUnionResult:
    """Combine leave-one-out invariant subspaces into a common one.

    ``leave_one_out`` lists, for every operator other than the distinct-spectrum
    one (in family order) or keyed by name, a non-trivial subspace invariant
    under all operators except that one.  With at least 2d - 1 of them a
    common non-trivial invariant subspace always comes out; with fewer the
    search may legitimately fail, raising ``WitnessNotFound``.
    """
    if not 0 <= a0_index < len(fam):
        raise PreconditionError(f"A0 index {a0_index} out of range")
    d = fam.dim
    basis = distinct_spectrum_basis(fam[a0_index], fam.names[a0_index])
    if basis is None:
        raise PreconditionError(f"{fam.names[a0_index]} does not have {d} distinct eigenvalues in {fam.field}")
    others, spaces = _leave_one_out_list(fam, a0_index, leave_one_out)
    for j, h in zip(others, spaces):
        if not isinstance(h, Subspace) or h.field != fam.field or h.ambient != d:
            raise PreconditionError(f"leave-one-out subspace for {fam.names[j]} is not a subspace of K^{d}")
        if not h.is_nontrivial():
            raise PreconditionError(f"leave-one-out subspace for {fam.names[j]} is trivial")
        for m, a in enumerate(fam.operators):
            if m != j and not is_invariant(a, h):
                raise PreconditionError(
                    f"leave-one-out subspace for {fam.names[j]} is not invariant under {fam.names[m]}"
                )
    supports = tuple(invariant_support(basis, h) for h in spaces)
    found = find_redundant_union_witness(SetFamily.from_sets(d, supports))
    if found is None:
        p = len(supports)
        if p >= 2 * d - 1:
            raise WitnessNotFound(
                f"no redundant union among {p} >= 2d - 1 support sets: "
                "the leave-one-out subspaces violate the input contract"
            )
        raise WitnessNotFound(f"no redundant union among the {p} support sets (fewer than 2d - 1 = {2 * d - 1})")
    witness, union = found
    result = basis.span(union)
    if not result.is_nontrivial() or not all(is_invariant(a, result) for a in fam.operators):
        raise VerificationError("combined subspace failed the invariance check")
    return SupportUnionResult(result, supports, witness, union, basis)


def common_invariant_from_supports(fam: OperatorFamily, a0_index: int, leave_one_out) -> Subspace:
    return support_union_pipeline(fam, a0_index, leave_one_out).subspace


def operator_family_linear_basis(fam: OperatorFamily, coefficients: bool = False):
    """Indices of operators whose matrices span all the family's matrices.

    Greedy over family order, so at most d^2 indices come back.  With
    ``coefficients=True`` also returns, for every operator, its coefficients
    over the selected ones.
    """
    field, d = fam.field, fam.dim
    flat = [[x for row in a._data for x in row] for a in fam.operators]
    chosen, echelon = [], []
    for i, v in enumerate(flat):
        trial, pivots = _rref(field, echelon + [v], d * d)
        if len(pivots) > len(echelon):
            chosen.append(i)
            echelon = trial
    chosen = tuple(chosen)
    if not coefficients:
        return chosen
    cols = [flat[i] for i in chosen]
    combos = []
    for v in flat:
        sol = _solve_raw(field, cols, v)
        combos.append(tuple(Scalar(field, c) for c in sol))
    return chosen, combos


def _gaussian_binomial(d: int, k: int, p: int) -> int:
    num = den = 1
    for i in range(k):
        num *= p ** (d - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def count_subspaces(field: Field, d: int, nontrivial: bool = True) -> int:
    if field.order is None:
        raise InputError("subspaces can only be counted over a finite field")
    dims = range(1, d) if nontrivial else range(0, d + 1)
    return sum(_gaussian_binomial(d, k, field.order) for k in dims)


def enumerate_subspaces(field: Field, d: int, k: int):
    """All k-dimensional subspaces of GF(p)^d in canonical order.

    Order: pivot patterns lexicographically, then free entries lexicographically.
    """
    if field.order is None:
        raise InputError("subspaces can only be enumerated over a finite field")
    p = field.order
    for pivots in itertools.combinations(range(d), k):
        pivot_set = set(pivots)
        slots = [(r, j) for r, c in enumerate(pivots) for j in range(c + 1, d) if j not in pivot_set]
        for values in itertools.product(range(p), repeat=len(slots)):
            rows = [[0] * d for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, j), x in zip(slots, values):
                rows[r][j] = x
            s = Subspace.__new__(Subspace)
            s._set(field, d, rows, pivots)
            yield s


def brute_force_common_invariant(fam: OperatorFamily, budget: int | None = None) -> Subspace | None:
    """First non-trivial subspace (dimension ascending, then canonical order)
    invariant under every operator, or None."""
    field, d = fam.field, fam.dim
    charge(count_subspaces(field, d), enumeration_budget(budget), f"subspaces of GF({field.order})^{d}")
    for k in range(1, d):
        for s in enumerate_subspaces(field, d, k):
            if all(is_invariant(a, s) for a in fam.operators):
                return s
    return None
