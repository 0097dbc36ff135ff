from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helly import GF, QQ, FieldMismatchError, InputError, Polynomial, parse_field, parse_scalar, roots_in_field
from helly.fields import is_prime


def test_examples():
    assert GF(7)(3).inv() == GF(7)(5)
    assert QQ(Fraction(1, 2)) + QQ(Fraction(1, 3)) == QQ(Fraction(5, 6))
    assert parse_scalar("-3/6", QQ) == QQ(Fraction(-1, 2))
    assert str(parse_scalar("-3/6", QQ)) == "-1/2"
    assert parse_scalar("9", GF(7)) == GF(7)(2)
    assert parse_scalar("1/3", GF(7)) == GF(7)(5)


@pytest.mark.parametrize("text", ["1/0", "abc", "", "1.5", "1/2/3"])
def test_parse_scalar_rejects(text):
    with pytest.raises(InputError):
        parse_scalar(text, QQ)


def test_fraction_with_denominator_divisible_by_p():
    with pytest.raises(InputError):
        parse_scalar("1/7", GF(7))


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        QQ(0).inv()
    with pytest.raises(ZeroDivisionError):
        GF(5)(1) / GF(5)(0)


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        GF(5)(1) + GF(7)(1)
    with pytest.raises(FieldMismatchError):
        QQ(1) * GF(7)(1)


@pytest.mark.parametrize("spec, expected", [("Q", QQ), ("QQ", QQ), ("GF:5", GF(5)), ("GF(7)", GF(7)), ({"GF": 3}, GF(3))])
def test_parse_field(spec, expected):
    assert parse_field(spec) == expected


@pytest.mark.parametrize("spec", ["GF:4", "GF:1", "R", {"GF": "x"}, 5, "GF:"])
def test_parse_field_rejects(spec):
    with pytest.raises(InputError):
        parse_field(spec)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_roots_examples():
    assert roots_in_field(Polynomial(GF(5), [1, 0, 1])) == [GF(5)(2), GF(5)(3)]
    assert roots_in_field(Polynomial(QQ, [1, 0, 1])) == []
    assert roots_in_field(Polynomial(QQ, [6, -5, 1])) == [QQ(2), QQ(3)]
    assert str(Polynomial(QQ, [6, -5, 1])) == "x^2 - 5x + 6"


def test_roots_rational_and_multiplicity():
    # (2x - 1)^2 (x + 3) = 4x^3 + 8x^2 - 11x + 3
    p = Polynomial(QQ, [3, -11, 8, 4])
    assert roots_in_field(p, multiplicities=True) == [(QQ(-3), 1), (QQ(Fraction(1, 2)), 2)]


def test_zero_polynomial_roots_rejected():
    with pytest.raises(InputError):
        roots_in_field(Polynomial(QQ, [0]))


def test_roots_with_zero_constant():
    # x^3 - x over Q
    assert roots_in_field(Polynomial(QQ, [0, -1, 0, 1])) == [QQ(-1), QQ(0), QQ(1)]


small = st.integers(-50, 50)
rationals = st.builds(Fraction, small, st.integers(1, 20))


@given(st.lists(rationals, min_size=1, max_size=5))
def test_roots_of_constructed_polynomial(rs):
    # prod (x - r) has exactly these roots over Q
    coeffs = [Fraction(1)]
    for r in rs:
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] -= r * c
            nxt[i + 1] += c
        coeffs = nxt
    found = roots_in_field(Polynomial(QQ, coeffs), multiplicities=True)
    expected = sorted({r: rs.count(r) for r in rs}.items())
    assert [(x.value, m) for x, m in found] == expected


@given(st.sampled_from([2, 3, 5, 7, 11]), st.lists(st.integers(0, 100), min_size=1, max_size=6))
def test_gf_roots_match_evaluation(p, coeffs):
    poly = Polynomial(GF(p), coeffs)
    if poly.is_zero():
        return
    roots = {r.value for r in roots_in_field(poly)}
    assert roots == {x for x in range(p) if poly(GF(p)(x)) == 0}


def test_scalar_is_immutable_and_hashable():
    x = GF(5)(3)
    with pytest.raises(AttributeError):
        x.value = 1
    assert len({GF(5)(8), GF(5)(3)}) == 1
    assert QQ(Fraction(2, 4)) == QQ(Fraction(1, 2))
