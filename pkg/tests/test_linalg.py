import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_matrix
from oracles import cofactor_char_poly, projective_points_mod
from helly import (
    GF,
    QQ,
    InputError,
    Matrix,
    PreconditionError,
    Subspace,
    char_poly,
    eigen_decomposition_in_field,
    inverse,
    is_eigenvector,
    is_invariant,
    kernel_basis,
    rank,
    restrict_operator,
    rref,
    vector,
)

F5, F2 = GF(5), GF(2)


def E(field, d, *idx):
    return Subspace.coordinate(field, d, [i - 1 for i in idx])


def test_rref_examples():
    r, k, piv = rref(Matrix(QQ, [[1, 1], [1, 1]]))
    assert r == Matrix(QQ, [[1, 1], [0, 0]]) and k == 1 and piv == (0,)
    assert rref(Matrix.identity(QQ, 3))[0] == Matrix.identity(QQ, 3)
    r, k, _ = rref(Matrix(F2, [[0, 1], [1, 0]]))
    assert r == Matrix.identity(F2, 2) and k == 2


def test_kernel_examples():
    assert kernel_basis(Matrix(QQ, [[1, 1], [1, 1]])) == Subspace(QQ, 2, [[1, -1]])
    assert kernel_basis(Matrix(QQ, [[2, 1], [1, 1]])).dim == 0
    assert kernel_basis(Matrix.zeros(QQ, 3, 3)) == Subspace.full(QQ, 3)


def test_char_poly_examples():
    assert char_poly(Matrix(F2, [[0, 1], [1, 0]])).coefficients == (F2(1), F2(0), F2(1))
    assert str(char_poly(Matrix.diag(QQ, [2, 3]))) == "x^2 - 5x + 6"


def test_eigen_examples():
    dec = eigen_decomposition_in_field(Matrix.diag(F5, [1, 2]))
    assert dec == [(F5(1), E(F5, 2, 1)), (F5(2), E(F5, 2, 2))]
    assert eigen_decomposition_in_field(Matrix(QQ, [[0, -1], [1, 0]])) == []
    assert eigen_decomposition_in_field(Matrix(QQ, [[1, 1], [0, 1]])) == [(QQ(1), E(QQ, 2, 1))]


def test_subspace_examples():
    assert E(QQ, 3, 1, 2) & E(QQ, 3, 2, 3) == E(QQ, 3, 2)
    assert Subspace(QQ, 3, [[1, 1, 0]]) <= E(QQ, 3, 1, 2)
    assert vector(QQ, [1, 1, 0]) in E(QQ, 3, 1, 2)
    assert vector(QQ, [1, 1, 1]) not in E(QQ, 3, 1, 2)


def test_invariance_examples():
    a = Matrix(QQ, [[3, 1], [4, 1]])
    assert is_invariant(a, Subspace.full(QQ, 2))
    assert is_invariant(Matrix.diag(QQ, [1, 2]), E(QQ, 2, 1))
    assert not is_invariant(Matrix(QQ, [[0, 1], [1, 0]]), E(QQ, 2, 1))


def test_eigenvector_examples():
    assert is_eigenvector(Matrix.diag(QQ, [1, 2]), [1, 0]) == QQ(1)
    assert is_eigenvector(Matrix.diag(QQ, [1, 2]), [1, 1]) is None
    with pytest.raises(PreconditionError):
        is_eigenvector(Matrix.diag(QQ, [1, 2]), [0, 0])


def test_restrict_examples():
    assert restrict_operator(Matrix.diag(QQ, [1, 2, 3]), E(QQ, 3, 1, 3)) == Matrix.diag(QQ, [1, 3])
    a = Matrix(QQ, [[3, 1], [4, 1]])
    assert restrict_operator(a, Subspace.full(QQ, 2)) == a
    assert restrict_operator(Matrix(QQ, [[1, 1], [0, 1]]), E(QQ, 2, 1)) == Matrix(QQ, [[1]])
    with pytest.raises(PreconditionError):
        restrict_operator(Matrix(QQ, [[0, 1], [1, 0]]), E(QQ, 2, 1))


def test_restrict_non_coordinate_basis():
    # span{(1,1)} is the eigenline of eigenvalue 3
    a = Matrix(QQ, [[1, 2], [2, 1]])
    assert restrict_operator(a, Subspace(QQ, 2, [[1, 1]])) == Matrix(QQ, [[3]])


def test_inverse():
    a = Matrix(QQ, [[2, 1], [1, 1]])
    assert a @ inverse(a) == Matrix.identity(QQ, 2)
    with pytest.raises(InputError):
        inverse(Matrix(QQ, [[1, 1], [1, 1]]))


def test_shape_errors():
    with pytest.raises(InputError):
        Matrix(QQ, [[1, 2], [3]])
    with pytest.raises(InputError):
        Matrix(QQ, [[1, 2]]) @ Matrix(QQ, [[1, 2]])


fields = st.sampled_from([QQ, GF(2), GF(3), GF(5), GF(7)])


@st.composite
def matrices(draw, square=False, max_dim=4):
    field = draw(fields)
    r = draw(st.integers(1, max_dim))
    c = r if square else draw(st.integers(1, max_dim))
    seed = draw(st.integers(0, 2**32))
    return random_matrix(random.Random(seed), field, r, c)


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.cols
    for v in kernel_basis(m).vectors():
        assert m.apply(v).is_zero()


@given(matrices())
def test_rref_idempotent_and_row_space(m):
    r, k, _ = rref(m)
    assert rref(r)[0] == r
    assert Subspace(m.field, m.cols, m.entries()) == Subspace(m.field, m.cols, r.entries())
    assert rank(m.T) == k


@given(matrices(), st.integers(0, 2**32))
def test_subspace_canonicity(m, seed):
    # any invertible recombination of the rows spans the same canonical subspace
    rng = random.Random(seed)
    field = m.field
    rows = m.entries()
    mixed = []
    for i in range(len(rows)):
        c = field(rng.randint(1, 4) if field.order is None else rng.randrange(1, field.order))
        mixed.append([c * x for x in rows[i]])
    for i in range(1, len(mixed)):
        mixed[i] = [x + y for x, y in zip(mixed[i], mixed[i - 1])]
    rng.shuffle(mixed)
    a = Subspace(field, m.cols, rows)
    b = Subspace(field, m.cols, mixed)
    assert a == b and hash(a) == hash(b) and a.tolist() == b.tolist()


@given(matrices(), matrices(), st.integers(0, 2**32))
def test_modular_law(m1, m2, seed):
    field = m1.field
    d = m1.cols
    m2 = random_matrix(random.Random(seed), field, m2.rows, d)
    u, w = Subspace(field, d, m1.entries()), Subspace(field, d, m2.entries())
    meet, join = u & w, u + w
    assert join.dim + meet.dim == u.dim + w.dim
    assert meet <= u and meet <= w and u <= join and w <= join


@given(st.sampled_from([2, 3]), st.integers(1, 3), st.integers(0, 2**32))
def test_intersection_matches_point_enumeration(p, d, seed):
    rng = random.Random(seed)
    field = GF(p)
    u = Subspace(field, d, random_matrix(rng, field, rng.randint(0, d) or 1, d).entries())
    w = Subspace(field, d, random_matrix(rng, field, rng.randint(1, d), d).entries())
    both = {v for v in projective_points_mod(p, d) if vector(field, v) in u and vector(field, v) in w}
    meet = u & w
    assert both == {v for v in projective_points_mod(p, d) if vector(field, v) in meet}


@given(matrices(square=True))
def test_char_poly_matches_cofactor(a):
    mod = a.field.order
    rows = [[x.value for x in row] for row in a.entries()]
    assert [x.value for x in char_poly(a).coefficients] == cofactor_char_poly(rows, mod)


@given(matrices(square=True))
def test_cayley_hamilton(a):
    field, d = a.field, a.rows
    acc = Matrix.zeros(field, d, d)
    power = Matrix.identity(field, d)
    for c in char_poly(a).coefficients:
        acc = acc + power * c
        power = power @ a
    assert acc.is_zero()


@given(matrices(square=True))
def test_eigen_decomposition_consistent(a):
    field, d = a.field, a.rows
    from helly import roots_in_field

    dec = eigen_decomposition_in_field(a)
    assert [lam for lam, _ in dec] == roots_in_field(char_poly(a))
    for lam, space in dec:
        assert space == kernel_basis(a - Matrix.identity(field, d) * lam)
        assert space.dim >= 1
        for v in space.vectors():
            assert is_eigenvector(a, v) == lam


@given(matrices(square=True))
def test_restriction_intertwines(a):
    # for every eigenspace S (invariant), A B^T = B^T R with B the basis rows
    for _, space in eigen_decomposition_in_field(a):
        r = restrict_operator(a, space)
        bt = space.basis.T
        assert a @ bt == bt @ r


def test_exact_rational_entries():
    a = Matrix(QQ, [[Fraction(1, 3), Fraction(-2, 7)], [Fraction(5, 2), 1]])
    assert a @ inverse(a) == Matrix.identity(QQ, 2)
    assert a.tolist() == [["1/3", "-2/7"], ["5/2", "1"]]
