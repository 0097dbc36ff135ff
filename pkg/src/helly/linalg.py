"""Dense exact matrices and canonical subspaces.

Matrices act on column vectors, but vectors are stored and passed around as
1 x d matrices (rows).  ``Subspace`` always keeps its basis in reduced row
echelon form, so two subspaces are equal exactly when their stored bases are.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import FieldMismatchError, InputError, PreconditionError
from .fields import Field, Polynomial, Scalar, roots_in_field

__all__ = [
    "Matrix",
    "Subspace",
    "vector",
    "rref",
    "rank",
    "kernel_basis",
    "inverse",
    "char_poly",
    "eigen_decomposition_in_field",
    "is_invariant",
    "is_eigenvector",
    "restrict_operator",
]


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field: Field, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(field.coerce(x) for x in row) for row in entries)
        if cols is None:
            if not data:
                raise InputError("cannot infer the column count of an empty matrix")
            cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise InputError("ragged matrix rows")
        self._init(field, data, cols)

    def _init(self, field, data, cols):
        self.field = field
        self.rows = len(data)
        self.cols = cols
        self._data = data
        self._hash = None

    @classmethod
    def _raw(cls, field, data, cols=None) -> Matrix:
        m = cls.__new__(cls)
        data = tuple(tuple(r) for r in data)
        m._init(field, data, cols if cols is not None else len(data[0]))
        return m

    @classmethod
    def identity(cls, field: Field, d: int) -> Matrix:
        one, zero = field.reduce(1), field.reduce(0)
        return cls._raw(field, [[one if i == j else zero for j in range(d)] for i in range(d)], d)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Matrix:
        zero = field.reduce(0)
        return cls._raw(field, [[zero] * cols for _ in range(rows)], cols)

    @classmethod
    def diag(cls, field: Field, values: Sequence) -> Matrix:
        d = len(values)
        zero = field.reduce(0)
        raw = [field.coerce(v) for v in values]
        return cls._raw(field, [[raw[i] if i == j else zero for j in range(d)] for i in range(d)], d)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence]) -> Matrix:
        return cls(field, zip(*columns)) if columns else cls.zeros(field, 0, 0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.field, self._data[i][j])

    def row(self, i: int) -> tuple[Scalar, ...]:
        return tuple(Scalar(self.field, x) for x in self._data[i])

    def entries(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def tolist(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x) for x in row] for row in self._data]

    @property
    def T(self) -> Matrix:
        return Matrix._raw(self.field, list(zip(*self._data)) if self.rows else [], self.rows)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self._data)

    def _check(self, other: Matrix):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} + {other.shape}")
        red = self.field.reduce
        return Matrix._raw(
            self.field,
            [[red(a + b) for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.cols,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __neg__(self) -> Matrix:
        red = self.field.reduce
        return Matrix._raw(self.field, [[red(-a) for a in r] for r in self._data], self.cols)

    def __mul__(self, c) -> Matrix:
        c = self.field.coerce(c)
        red = self.field.reduce
        return Matrix._raw(self.field, [[red(a * c) for a in r] for r in self._data], self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        red = self.field.reduce
        cols = list(zip(*other._data)) if other.rows else [()] * other.cols
        return Matrix._raw(
            self.field,
            [[red(sum(a * b for a, b in zip(r, c))) for c in cols] for r in self._data],
            other.cols,
        )

    def apply(self, v: Matrix) -> Matrix:
        """Image of the row vector ``v`` (i.e. ``(self @ v.T).T``)."""
        v = as_vector(self.field, v)
        if v.cols != self.cols:
            raise InputError(f"vector of length {v.cols} for a {self.shape} matrix")
        return Matrix._raw(self.field, [_matvec(self.field, self._data, v._data[0])], self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.cols == other.cols and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.cols, self._data))
        return self._hash

    def __getstate__(self):
        return (self.field, self._data, self.cols)

    def __setstate__(self, state):
        self._init(*state)

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.tolist()})"

    def __str__(self):
        rows = self.tolist()
        if not rows:
            return f"[] (0x{self.cols})"
        width = max(len(x) for r in rows for x in r)
        return "\n".join("[" + " ".join(x.rjust(width) for x in r) + "]" for r in rows)


def vector(field: Field, values: Sequence) -> Matrix:
    return Matrix(field, [values])


def as_vector(field: Field, v) -> Matrix:
    if isinstance(v, Matrix):
        if v.field != field:
            raise FieldMismatchError(f"{field} vs {v.field}")
        if v.rows != 1:
            raise InputError(f"expected a 1 x d row vector, got shape {v.shape}")
        return v
    return vector(field, list(v))


def _matvec(field, data, v):
    red = field.reduce
    return [red(sum(a * b for a, b in zip(row, v))) for row in data]


def _rref(field: Field, rows, ncols: int):
    """Raw RREF; returns (nonzero rows, pivot columns)."""
    red, inv = field.reduce, field.inv
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        s = inv(pr[c])
        if s != 1:
            pr = rows[r] = [red(x * s) for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [red(a - f * b) for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _kernel_raw(field: Field, rows, ncols: int):
    reduced, pivots = _rref(field, rows, ncols)
    pivot_set = set(pivots)
    zero, one, red = field.reduce(0), field.reduce(1), field.reduce
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(reduced, pivots):
            v[pc] = red(-row[f])
        basis.append(v)
    return basis


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form, padded with zero rows to the input's shape."""
    reduced, pivots = _rref(m.field, m._data, m.cols)
    zero = m.field.reduce(0)
    padded = reduced + [[zero] * m.cols for _ in range(m.rows - len(reduced))]
    return Matrix._raw(m.field, padded, m.cols), len(pivots), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(_rref(m.field, m._data, m.cols)[1])


def kernel_basis(m: Matrix) -> Subspace:
    """The subspace {v : m v = 0} of K^cols."""
    return Subspace._canonical(m.field, m.cols, _kernel_raw(m.field, m._data, m.cols))


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise InputError("only square matrices have inverses")
    d = m.cols
    one, zero = m.field.reduce(1), m.field.reduce(0)
    aug = [list(r) + [one if i == j else zero for j in range(d)] for i, r in enumerate(m._data)]
    reduced, pivots = _rref(m.field, aug, 2 * d)
    if len(pivots) < d or pivots[d - 1] != d - 1:
        raise InputError("matrix is singular")
    return Matrix._raw(m.field, [r[d:] for r in reduced], d)


def _solve_raw(field, columns, target):
    """Coefficients c with sum c_i columns_i = target, or None."""
    n = len(columns)
    d = len(target)
    aug = [[columns[i][r] for i in range(n)] + [target[r]] for r in range(d)]
    reduced, pivots = _rref(field, aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    sol = [field.reduce(0)] * n
    for row, pc in zip(reduced, pivots):
        sol[pc] = row[n]
    return sol


class Subspace:
    """A subspace of K^d stored by its canonical RREF basis."""

    __slots__ = ("field", "ambient", "_rows", "_pivots", "_hash")

    def __init__(self, field: Field, ambient: int, vectors: Iterable = ()):
        raw = []
        for v in vectors:
            v = as_vector(field, v)
            if v.cols != ambient:
                raise InputError(f"vector of length {v.cols} in K^{ambient}")
            raw.append(v._data[0])
        self._set(field, ambient, *_rref(field, raw, ambient))

    def _set(self, field, ambient, rows, pivots):
        self.field = field
        self.ambient = ambient
        self._rows = tuple(tuple(r) for r in rows)
        self._pivots = tuple(pivots)
        self._hash = None

    @classmethod
    def _canonical(cls, field, ambient, raw_rows) -> Subspace:
        s = cls.__new__(cls)
        s._set(field, ambient, *_rref(field, raw_rows, ambient))
        return s

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable = ()) -> Subspace:
        return cls(field, ambient, vectors)

    @classmethod
    def zero(cls, field: Field, ambient: int) -> Subspace:
        return cls._canonical(field, ambient, [])

    @classmethod
    def full(cls, field: Field, ambient: int) -> Subspace:
        return cls._canonical(field, ambient, Matrix.identity(field, ambient)._data)

    @classmethod
    def coordinate(cls, field: Field, ambient: int, indices: Iterable[int]) -> Subspace:
        """span(e_i : i in indices), 0-based."""
        idx = sorted(set(indices))
        one, zero = field.reduce(1), field.reduce(0)
        return cls._canonical(field, ambient, [[one if j == i else zero for j in range(ambient)] for i in idx])

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    @property
    def basis(self) -> Matrix:
        return Matrix._raw(self.field, self._rows, self.ambient)

    def vectors(self) -> list[Matrix]:
        return [Matrix._raw(self.field, [r], self.ambient) for r in self._rows]

    def is_nontrivial(self) -> bool:
        return 0 < self.dim < self.ambient

    def _residue(self, v):
        red = self.field.reduce
        v = list(v)
        for row, pc in zip(self._rows, self._pivots):
            f = v[pc]
            if f:
                v = [red(a - f * b) for a, b in zip(v, row)]
        return v

    def _contains_raw(self, v) -> bool:
        return not any(self._residue(v))

    def coordinates(self, v) -> list[Scalar]:
        """Coefficients of ``v`` in the canonical basis."""
        v = as_vector(self.field, v)._data[0]
        if not self._contains_raw(v):
            raise InputError("vector is not in the subspace")
        return [Scalar(self.field, v[pc]) for pc in self._pivots]

    def _compatible(self, other: Subspace):
        if not isinstance(other, Subspace):
            raise TypeError(f"expected Subspace, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if other.ambient != self.ambient:
            raise InputError(f"ambient dimension mismatch {self.ambient} vs {other.ambient}")

    def __contains__(self, v) -> bool:
        if isinstance(v, Subspace):
            return v <= self
        v = as_vector(self.field, v)
        if v.cols != self.ambient:
            raise InputError(f"vector of length {v.cols} in K^{self.ambient}")
        return self._contains_raw(v._data[0])

    def __le__(self, other: Subspace) -> bool:
        self._compatible(other)
        return self.dim <= other.dim and all(other._contains_raw(r) for r in self._rows)

    def __ge__(self, other: Subspace) -> bool:
        return other <= self

    def annihilator_rows(self):
        return _kernel_raw(self.field, self._rows, self.ambient) if self._rows else list(
            Matrix.identity(self.field, self.ambient)._data
        )

    def __and__(self, other: Subspace) -> Subspace:
        self._compatible(other)
        if self.dim == self.ambient:
            return other
        if other.dim == self.ambient:
            return self
        constraints = self.annihilator_rows() + other.annihilator_rows()
        return Subspace._canonical(self.field, self.ambient, _kernel_raw(self.field, constraints, self.ambient))

    def __add__(self, other: Subspace) -> Subspace:
        self._compatible(other)
        return Subspace._canonical(self.field, self.ambient, self._rows + other._rows)

    intersect = __and__
    sum = __add__

    def contains(self, other: Subspace) -> bool:
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.ambient == other.ambient and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.ambient, self._rows))
        return self._hash

    def __getstate__(self):
        return (self.field, self.ambient, self._rows, self._pivots)

    def __setstate__(self, state):
        self._set(*state)

    def tolist(self) -> list[list[str]]:
        return self.basis.tolist()

    def __repr__(self):
        return f"Subspace({self.field!r}, {self.ambient}, {self.tolist()})"


def char_poly(a: Matrix) -> Polynomial:
    """det(xI - a) by Berkowitz's division-free recurrence."""
    if not a.is_square():
        raise InputError(f"characteristic polynomial of a non-square {a.shape} matrix")
    field, A = a.field, a._data
    red = field.reduce
    coeffs = [red(1)]  # highest degree first
    for k in range(a.rows):
        # Toeplitz column for bordering the leading k x k block with row/col k.
        col = [red(1), red(-A[k][k])]
        R = A[k][:k]
        v = [A[i][k] for i in range(k)]
        for _ in range(k):
            col.append(red(-sum(r * x for r, x in zip(R, v))))
            v = [red(sum(A[i][j] * v[j] for j in range(k))) for i in range(k)]
        coeffs = [
            red(sum(col[i - j] * coeffs[j] for j in range(max(0, i - k - 1), min(i, k) + 1)))
            for i in range(k + 2)
        ]
    return Polynomial._from_raw(field, reversed(coeffs))


@lru_cache(maxsize=4096)
def _eigen_cached(a: Matrix):
    out = []
    d = a.rows
    for lam in roots_in_field(char_poly(a)):
        shifted = [
            [a.field.reduce(x - lam.value) if i == j else x for j, x in enumerate(row)]
            for i, row in enumerate(a._data)
        ]
        out.append((lam, Subspace._canonical(a.field, d, _kernel_raw(a.field, shifted, d))))
    return tuple(out)


def eigen_decomposition_in_field(a: Matrix) -> list[tuple[Scalar, Subspace]]:
    """(eigenvalue, eigenspace) for every eigenvalue of ``a`` lying in its field."""
    if not a.is_square():
        raise InputError(f"eigenvalues of a non-square {a.shape} matrix")
    return list(_eigen_cached(a))


def _check_operator(a: Matrix, s: Subspace):
    if not a.is_square():
        raise InputError(f"operator must be square, got {a.shape}")
    if a.field != s.field:
        raise FieldMismatchError(f"{a.field} vs {s.field}")
    if a.rows != s.ambient:
        raise InputError(f"{a.rows}x{a.rows} operator on a subspace of K^{s.ambient}")


def is_invariant(a: Matrix, s: Subspace) -> bool:
    _check_operator(a, s)
    return all(s._contains_raw(_matvec(a.field, a._data, b)) for b in s._rows)


def is_eigenvector(a: Matrix, v) -> Scalar | None:
    """The eigenvalue of ``a`` at ``v``, or None when ``v`` is not an eigenvector."""
    v = as_vector(a.field, v)
    if v.cols != a.cols or not a.is_square():
        raise InputError(f"vector of length {v.cols} for a {a.shape} operator")
    x = v._data[0]
    lead = next((i for i, c in enumerate(x) if c), None)
    if lead is None:
        raise PreconditionError("the zero vector is never an eigenvector")
    field = a.field
    ax = _matvec(field, a._data, x)
    lam = field.reduce(ax[lead] * field.inv(x[lead]))
    if all(field.reduce(y - lam * c) == 0 for y, c in zip(ax, x)):
        return Scalar(field, lam)
    return None


def restrict_operator(a: Matrix, s: Subspace) -> Matrix:
    """Matrix of ``a`` acting on ``s`` in the canonical basis of ``s``.

    Column i holds the coordinates of ``a`` applied to the i-th basis vector.
    """
    _check_operator(a, s)
    images = []
    for b in s._rows:
        img = _matvec(a.field, a._data, b)
        if not s._contains_raw(img):
            raise PreconditionError("subspace is not invariant under the operator")
        images.append([img[pc] for pc in s._pivots])
    k = s.dim
    return Matrix._raw(a.field, [[images[i][j] for i in range(k)] for j in range(k)], k)
