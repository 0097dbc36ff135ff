import pytest

from helly import (
    GF,
    QQ,
    InputError,
    Matrix,
    OperatorFamily,
    Subspace,
    brute_force_common_eigenvectors,
    build_even_family,
    build_odd_family,
    build_sharpness_family,
    is_eigenvector,
    verify_sharpness,
)
from helly.sharpness import sharpness_spec, shift

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]


def test_even_n1_over_q():
    fam = build_even_family(1, QQ)
    assert fam.operators == (
        Matrix(QQ, [[0, 1], [0, 1]]),
        Matrix(QQ, [[1, 0], [0, 0]]),
        Matrix(QQ, [[0, 0], [-1, 1]]),
    )
    spec = sharpness_spec(1, QQ)
    assert spec.e(3) == spec.e(1) + spec.e(2)
    # A1 fixes e3 and kills e1, A2 fixes e1 and kills e2, A3 fixes e2 and kills e3
    for j, (fixed, killed) in enumerate([(3, 1), (1, 2), (2, 3)]):
        assert is_eigenvector(fam[j], spec.e(fixed)) == QQ(1)
        assert is_eigenvector(fam[j], spec.e(killed)) == QQ(0)
    assert is_eigenvector(fam[1], spec.e(2)) is not None and is_eigenvector(fam[2], spec.e(2)) is not None
    report = verify_sharpness(fam)
    assert report.sharp
    assert [w.tolist() for w in report.leave_one_out] == [[["0", "1"]], [["1", "1"]], [["1", "0"]]]


def test_identity_pair_not_sharp():
    ident = Matrix.identity(QQ, 2)
    report = verify_sharpness(OperatorFamily.of([ident, ident]))
    assert not report.sharp and report.full_witness is not None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("field", [QQ, GF(5), GF(7)])
def test_even_family_structure(n, field):
    spec = sharpness_spec(n, field)
    d = 2 * n
    for j in range(1, 3 * n + 1):
        assert 1 <= spec.partner(j) <= 3 * n
        h, l = spec.fixed[j - 1], spec.killed[j - 1]
        assert h.dim + 1 == d and (h & l).dim == 0 and (h + l) == Subspace.full(field, d)
    for i in range(1, n + 1):
        assert spec.e(3 * i) == spec.e(3 * i - 2) + spec.e(3 * i - 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("field", [QQ, GF(5), GF(7)])
def test_partner_is_leave_one_out_eigenvector(n, field):
    fam = build_even_family(n, field)
    spec = sharpness_spec(n, field)
    for j in range(1, 3 * n + 1):
        v = spec.e(spec.partner(j))
        for i, a in enumerate(fam.operators, start=1):
            if i != j:
                assert is_eigenvector(a, v) is not None


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("field", FIELDS)
def test_even_family_sharp(n, field):
    assert verify_sharpness(build_even_family(n, field)).sharp


def test_shift():
    assert [j + shift(j) for j in range(1, 7)] == [2, 3, 1, 5, 6, 4]


@pytest.mark.parametrize("d", [3, 5])
@pytest.mark.parametrize("field", [QQ, GF(3), GF(5), GF(7)])
def test_odd_family_sharp(d, field):
    fam = build_sharpness_family(d, field)
    assert len(fam) == 3 * d // 2
    assert verify_sharpness(fam).sharp


def test_odd_d3_gf5_matches_brute_force():
    fam = build_odd_family(1, GF(5))
    assert brute_force_common_eigenvectors(fam) == frozenset()
    for i in range(4):
        assert brute_force_common_eigenvectors(fam.without(i))


def test_odd_n1_over_gf2_fixture():
    # recorded outcome: with c_1 = 0 the single block needs only one scalar, and
    # the candidate verifies over GF(2)
    fam = build_odd_family(1, GF(2))
    report = verify_sharpness(fam)
    assert report.sharp and report.oracle_checked and len(fam) == 4


def test_odd_field_too_small():
    with pytest.raises(InputError):
        build_odd_family(3, GF(2))


def test_bad_dimension():
    with pytest.raises(InputError):
        build_sharpness_family(1, QQ)
    with pytest.raises(InputError):
        build_even_family(0, QQ)
