"""Common eigenvectors of operator families.

Three routes to the same question:

* ``common_eigen_refinement`` intersects eigenspaces operator by operator and
  returns the maximal simultaneous eigenspaces (works over any field);
* ``brute_force_common_eigenvectors`` enumerates projective points over GF(p)
  and serves as an independent oracle;
* ``construct_from_leave_one_out`` turns leave-one-out witnesses (v_i common to
  every operator except A_i) into a common eigenvector of the whole family by
  linear recombination, once the family has at least floor(3d/2) + 1 members.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .budgets import charge, enumeration_budget
from .errors import FieldMismatchError, InputError, PreconditionError
from .fields import Field, Scalar
from .linalg import Matrix, Subspace, _eigen_cached, _matvec, _rref, _solve_raw, as_vector, is_eigenvector

__all__ = [
    "OperatorFamily",
    "CommonEigenLine",
    "LeaveOneOutCertificate",
    "common_eigen_refinement",
    "has_common_eigenvector",
    "brute_force_common_eigenvectors",
    "projective_points",
    "leave_one_out_certificate",
    "construct_from_leave_one_out",
]


@dataclass(frozen=True)
class OperatorFamily:
    """Ordered, named list of d x d operators over one field."""

    field: Field
    dim: int
    operators: tuple[Matrix, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        if not self.operators:
            raise InputError("an operator family must be non-empty")
        if self.dim < 2:
            raise InputError(f"operators must act on K^d with d >= 2, got d = {self.dim}")
        if len(self.names) != len(self.operators):
            raise InputError("one name per operator is required")
        if len(set(self.names)) != len(self.names):
            raise InputError("operator names must be unique")
        for name, a in zip(self.names, self.operators):
            if a.field != self.field:
                raise FieldMismatchError(f"operator {name} is over {a.field}, family is over {self.field}")
            if a.shape != (self.dim, self.dim):
                raise InputError(f"operator {name} has shape {a.shape}, expected {self.dim}x{self.dim}")

    @classmethod
    def of(cls, matrices: Sequence[Matrix], names: Sequence[str] | None = None) -> OperatorFamily:
        matrices = tuple(matrices)
        if not matrices:
            raise InputError("an operator family must be non-empty")
        if names is None:
            names = [f"A{i + 1}" for i in range(len(matrices))]
        return cls(matrices[0].field, matrices[0].rows, matrices, tuple(names))

    def __len__(self) -> int:
        return len(self.operators)

    def __getitem__(self, i: int) -> Matrix:
        return self.operators[i]

    def __iter__(self) -> Iterator[tuple[str, Matrix]]:
        return iter(zip(self.names, self.operators))

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"no operator named {name!r}") from None

    def subfamily(self, indices: Sequence[int]) -> OperatorFamily:
        indices = list(indices)
        return OperatorFamily(
            self.field, self.dim, tuple(self.operators[i] for i in indices), tuple(self.names[i] for i in indices)
        )

    def without(self, i: int) -> OperatorFamily:
        return self.subfamily([j for j in range(len(self)) if j != i])


@dataclass(frozen=True)
class CommonEigenLine:
    """A simultaneous eigenspace together with the eigenvalue of each operator on it."""

    subspace: Subspace
    assignment: dict = dc_field(hash=False)

    def key(self):
        return (self.subspace, tuple(sorted((n, s.value) for n, s in self.assignment.items())))

    def vector(self) -> Matrix:
        return self.subspace.vectors()[0]

    def check(self, fam: OperatorFamily) -> bool:
        if self.subspace.dim == 0:
            return False
        for name, a in fam:
            lam = self.assignment.get(name)
            if lam is None:
                return False
            for v in self.subspace.vectors():
                if is_eigenvector(a, v) != lam:
                    return False
        return True


def _refine_step(lines, a: Matrix):
    eig = _eigen_cached(a)
    out = []
    for space, values in lines:
        for lam, espace in eig:
            meet = space & espace
            if meet.dim:
                out.append((meet, values + (lam,)))
    return out


def _refine(field, d, matrices):
    lines = [(Subspace.full(field, d), ())]
    for a in matrices:
        lines = _refine_step(lines, a)
        if not lines:
            break
    return lines


def common_eigen_refinement(fam: OperatorFamily) -> list[CommonEigenLine]:
    """Maximal simultaneous eigenspaces of the family.

    Branches follow the operators in family order and, within an operator, its
    eigenvalues in scalar order.  Empty result means no common eigenvector.
    """
    lines = _refine(fam.field, fam.dim, fam.operators)
    return [CommonEigenLine(space, dict(zip(fam.names, values))) for space, values in lines]


def has_common_eigenvector(fam: OperatorFamily) -> CommonEigenLine | None:
    lines = common_eigen_refinement(fam)
    return lines[0] if lines else None


def _is_eigen_raw(field, data, x) -> bool:
    ax = _matvec(field, data, x)
    lead = next(i for i, c in enumerate(x) if c)
    lam = field.reduce(ax[lead] * field.inv(x[lead]))
    red = field.reduce
    return all(red(y - lam * c) == 0 for y, c in zip(ax, x))


def _projective_raw(p: int, d: int):
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            yield (0,) * lead + (1,) + tail


def brute_force_common_eigenvectors(fam: OperatorFamily, budget: int | None = None) -> frozenset:
    """Every projective point of GF(p)^d that is an eigenvector of all operators.

    Points are tuples of Scalars normalised so the first nonzero coordinate is 1.
    """
    field = fam.field
    if field.order is None:
        raise InputError("projective brute force needs a finite field")
    p, d = field.order, fam.dim
    charge(p**d, enumeration_budget(budget), f"GF({p})^{d} enumeration")
    datas = [a._data for a in fam.operators]
    found = set()
    for x in _projective_raw(p, d):
        if all(_is_eigen_raw(field, data, x) for data in datas):
            found.add(tuple(Scalar(field, c) for c in x))
    return frozenset(found)


def projective_points(space: Subspace) -> frozenset:
    """All normalised projective points of a subspace over GF(p)."""
    field = space.field
    if field.order is None:
        raise InputError("projective points can only be listed over a finite field")
    rows = space._rows
    red = field.reduce
    points = set()
    for coeffs in _projective_raw(field.order, len(rows)):
        x = [0] * space.ambient
        for c, row in zip(coeffs, rows):
            if c:
                x = [red(a + c * b) for a, b in zip(x, row)]
        points.add(tuple(Scalar(field, c) for c in x))
    return frozenset(points)


@dataclass(frozen=True)
class LeaveOneOutCertificate:
    """Decomposition of leave-one-out witnesses over a maximal independent block.

    Indices are 0-based positions in the family.  For each dependent index i,
    ``coefficients[i]`` maps block indices j to the nonzero mu_{i,j} with
    v_i = sum_j mu_{i,j} v_j, and ``supports[i]`` lists those j.
    """

    witnesses: tuple[Matrix, ...]
    independent_block: tuple[int, ...]
    coefficients: dict = dc_field(hash=False)
    supports: dict = dc_field(hash=False)

    @property
    def dependent(self) -> tuple[int, ...]:
        return tuple(sorted(self.coefficients))

    def check(self) -> bool:
        field = self.witnesses[0].field
        d = self.witnesses[0].cols
        for i, mu in self.coefficients.items():
            total = [field.reduce(0)] * d
            for j, c in mu.items():
                if not c:
                    return False
                total = [field.reduce(a + c.value * b) for a, b in zip(total, self.witnesses[j]._data[0])]
            if tuple(total) != self.witnesses[i]._data[0]:
                return False
        return True


def _check_witnesses(fam: OperatorFamily, witnesses) -> tuple[Matrix, ...]:
    n = len(fam)
    if len(witnesses) != n:
        raise PreconditionError(f"{len(witnesses)} witnesses for a family of {n} operators")
    out = []
    for i, v in enumerate(witnesses):
        v = as_vector(fam.field, v)
        if v.cols != fam.dim:
            raise PreconditionError(f"witness {i + 1} has length {v.cols}, expected {fam.dim}")
        if not any(v._data[0]):
            raise PreconditionError(f"witness for {fam.names[i]} is the zero vector")
        for j, a in enumerate(fam.operators):
            if j != i and is_eigenvector(a, v) is None:
                raise PreconditionError(
                    f"witness for {fam.names[i]} is not an eigenvector of {fam.names[j]}"
                )
        out.append(v)
    return tuple(out)


def leave_one_out_certificate(fam: OperatorFamily, witnesses) -> LeaveOneOutCertificate:
    """Validate witnesses and express the dependent ones over an independent block."""
    vs = _check_witnesses(fam, witnesses)
    field, d = fam.field, fam.dim
    # Greedy from the back so the block is a suffix-heavy maximal independent set.
    block, echelon = [], []
    for i in range(len(vs) - 1, -1, -1):
        trial, pivots = _rref(field, echelon + [list(vs[i]._data[0])], d)
        if len(pivots) > len(echelon):
            echelon = trial
            block.append(i)
    block.sort()
    columns = [vs[j]._data[0] for j in block]
    coefficients, supports = {}, {}
    for i in range(len(vs)):
        if i in block:
            continue
        sol = _solve_raw(field, columns, vs[i]._data[0])
        mu = {j: Scalar(field, c) for j, c in zip(block, sol) if c}
        coefficients[i] = mu
        supports[i] = tuple(sorted(mu))
    return LeaveOneOutCertificate(vs, tuple(block), coefficients, supports)


_VIOLATED = "hypothesis violated - input is not a genuine leave-one-out certificate"


def construct_from_leave_one_out(fam: OperatorFamily, witnesses) -> Matrix:
    """Common eigenvector of the whole family built from leave-one-out witnesses.

    Requires ``len(fam) >= floor(3d/2) + 1``.  The result is checked against
    every operator before it is returned.
    """
    d, n = fam.dim, len(fam)
    if n < 3 * d // 2 + 1:
        raise PreconditionError(f"need at least {3 * d // 2 + 1} operators for d = {d}, got {n}")
    cert = leave_one_out_certificate(fam, witnesses)
    vs = cert.witnesses
    field = fam.field
    red = field.reduce

    def verified(w: Matrix) -> Matrix:
        if not any(w._data[0]) or any(is_eigenvector(a, w) is None for a in fam.operators):
            raise PreconditionError(_VIOLATED)
        return w

    for i in cert.dependent:
        support = cert.supports[i]
        if not support:
            raise PreconditionError(_VIOLATED)
        if len(support) == 1:
            return verified(vs[support[0]])

    pair = next(
        (
            (i1, i2)
            for i1, i2 in itertools.combinations(cert.dependent, 2)
            if set(cert.supports[i1]) & set(cert.supports[i2])
        ),
        None,
    )
    if pair is None:
        raise PreconditionError(_VIOLATED)
    i1, i2 = pair
    mu1, mu2 = cert.coefficients[i1], cert.coefficients[i2]
    shared = sorted(set(mu1) & set(mu2))
    l = shared[0]
    # Terms of mu_{2,l} v_1 - mu_{1,l} v_2 whose coefficient cancels.
    cancelled = [j for j in shared if mu2[l] * mu1[j] == mu1[l] * mu2[j]]
    w = [red(0)] * d
    for j in cancelled:
        c = (mu2[l] * mu1[j]).value
        w = [red(a + c * b) for a, b in zip(w, vs[j]._data[0])]
    return verified(Matrix._raw(field, [w], d))
