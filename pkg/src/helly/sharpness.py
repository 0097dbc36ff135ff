"""Families of floor(3d/2) operators with no common eigenvector although every
leave-one-out subfamily has one.

Even d = 2n: take vectors e_1..e_{3n} where the e_j with 3 not dividing j are
the standard basis of K^{2n} and e_{3i} = e_{3i-2} + e_{3i-1}.  A_j fixes
H_j = span(e_i : i != j, j + f(j)) pointwise and kills e_j, where f(j) = 1 for
j = 1, 2 (mod 3) and f(j) = -2 for j = 0 (mod 3).

Odd d = 2n + 1: each even operator is extended by A_j e_{2n+1} = e_{2n+1}, and
one more operator acts as the scalar c_i on the i-th coordinate pair with
e_{2n+1} -> e_{2n+1} + e_1.  The extra coordinate is a common eigenvector of the
first 3n operators, every e_j stays an eigenvector of the last one, and the only
line the extension adds to the common eigenvectors of A_1..A_{3n} is
e_{2n+1} itself, which the last operator moves.  The construction is checked
by ``verify_sharpness`` before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budgets import enumeration_budget
from .errors import ContradictionError, InputError, VerificationError
from .fields import Field
from .linalg import Matrix, Subspace, inverse
from .spectra import (
    OperatorFamily,
    brute_force_common_eigenvectors,
    common_eigen_refinement,
    projective_points,
)

__all__ = [
    "SharpnessSpec",
    "SharpnessReport",
    "shift",
    "sharpness_spec",
    "build_even_family",
    "build_odd_family",
    "build_sharpness_family",
    "verify_sharpness",
]


def shift(j: int) -> int:
    """f(j): the partner index of e_j is j + f(j)."""
    return -2 if j % 3 == 0 else 1


@dataclass(frozen=True)
class SharpnessSpec:
    field: Field
    n: int
    vectors: tuple[Matrix, ...]  # e_1..e_{3n}, index 0 holds e_1
    fixed: tuple[Subspace, ...]  # H_j, eigenvalue 1
    killed: tuple[Subspace, ...]  # L_j, eigenvalue 0

    @property
    def d(self) -> int:
        return 2 * self.n

    def e(self, j: int) -> Matrix:
        return self.vectors[j - 1]

    def partner(self, j: int) -> int:
        return j + shift(j)


def sharpness_spec(n: int, field: Field) -> SharpnessSpec:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    d = 2 * n
    unit = Matrix.identity(field, d)
    vectors = []
    for i in range(1, n + 1):
        a, b = unit._data[2 * i - 2], unit._data[2 * i - 1]
        vectors += [a, b, [field.reduce(x + y) for x, y in zip(a, b)]]
    vectors = tuple(Matrix._raw(field, [v], d) for v in vectors)
    fixed, killed = [], []
    for j in range(1, 3 * n + 1):
        skip = {j, j + shift(j)}
        fixed.append(Subspace(field, d, [vectors[i - 1] for i in range(1, 3 * n + 1) if i not in skip]))
        killed.append(Subspace(field, d, [vectors[j - 1]]))
    return SharpnessSpec(field, n, vectors, tuple(fixed), tuple(killed))


def build_even_family(n: int, field: Field) -> OperatorFamily:
    spec = sharpness_spec(n, field)
    d = spec.d
    ops = []
    for j in range(1, 3 * n + 1):
        h, l = spec.fixed[j - 1], spec.killed[j - 1]
        if h.dim + l.dim != d or (h & l).dim != 0:
            raise VerificationError(f"H_{j} and L_{j} do not form a direct sum")
        cols = [v._data[0] for v in h.vectors()] + [spec.e(j)._data[0]]
        b = Matrix._raw(field, list(zip(*cols)), d)
        diag = Matrix.diag(field, [1] * (d - 1) + [0])
        ops.append(b @ diag @ inverse(b))
    return OperatorFamily.of(ops)


def build_odd_family(n: int, field: Field, verify: bool = True) -> OperatorFamily:
    even = build_even_family(n, field)
    d = 2 * n + 1
    if field.order is not None and field.order < n:
        raise InputError(f"{field} has fewer than {n} elements for distinct block scalars")
    red = field.reduce
    zero, one = red(0), red(1)
    ops = []
    for a in even.operators:
        rows = [list(r) + [zero] for r in a._data] + [[zero] * (d - 1) + [one]]
        ops.append(Matrix._raw(field, rows, d))
    extra = [[zero] * d for _ in range(d)]
    for i in range(n):
        c = red(i)
        extra[2 * i][2 * i] = extra[2 * i + 1][2 * i + 1] = c
    extra[d - 1][d - 1] = one
    extra[0][d - 1] = one
    ops.append(Matrix._raw(field, extra, d))
    fam = OperatorFamily.of(ops)
    if verify:
        report = verify_sharpness(fam)
        if not report.sharp:
            raise VerificationError(f"odd candidate family for d = {d} over {field} is not sharp")
    return fam


def build_sharpness_family(d: int, field: Field) -> OperatorFamily:
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise InputError(f"d must be an integer >= 2, got {d!r}")
    return build_even_family(d // 2, field) if d % 2 == 0 else build_odd_family(d // 2, field)


@dataclass(frozen=True)
class SharpnessReport:
    dim: int
    field: Field
    names: tuple[str, ...]
    leave_one_out: tuple[Matrix | None, ...]  # witness for family minus operator j
    full_witness: Matrix | None
    oracle_checked: bool

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def sharp(self) -> bool:
        return all(w is not None for w in self.leave_one_out) and self.full_witness is None


def _points_from_lines(lines):
    pts = set()
    for line in lines:
        pts |= projective_points(line.subspace)
    return pts


def verify_sharpness(fam: OperatorFamily, budget: int | None = None) -> SharpnessReport:
    """Leave-one-out and full-family common eigenvector checks.

    Over GF(p) with p^d within budget each refinement answer is cross-checked
    against projective brute force; a disagreement raises ContradictionError.
    """
    field, d = fam.field, fam.dim
    oracle = field.order is not None and field.order**d <= enumeration_budget(budget)

    def solve(sub: OperatorFamily):
        lines = common_eigen_refinement(sub)
        if oracle:
            brute = brute_force_common_eigenvectors(sub, budget)
            if _points_from_lines(lines) != brute:
                raise ContradictionError(
                    f"refinement and brute force disagree on {list(sub.names)}", evidence=sub.names
                )
        return lines[0].vector() if lines else None

    loo = tuple(solve(fam.without(j)) if len(fam) > 1 else None for j in range(len(fam)))
    return SharpnessReport(d, field, fam.names, loo, solve(fam), oracle)
