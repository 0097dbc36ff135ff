"""Exact scalars over the rationals and prime fields GF(p).

Two layers live here.  ``Field`` objects know how to do arithmetic on *raw*
values (``Fraction`` for Q, ``int`` residues for GF(p)); the linear algebra
kernels work on raw values for speed.  ``Scalar`` wraps a raw value together
with its field and is what the public API hands out.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm

from .errors import FieldMismatchError, InputError

__all__ = [
    "Field",
    "Rationals",
    "PrimeField",
    "QQ",
    "GF",
    "Scalar",
    "Polynomial",
    "parse_field",
    "parse_scalar",
    "roots_in_field",
    "is_prime",
]

_LITERAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for k in range(3, isqrt(n) + 1, 2):
        if n % k == 0:
            return False
    return True


class Field:
    """Base class; use ``QQ`` or ``GF(p)``."""

    characteristic: int
    order: int | None

    def __call__(self, value) -> Scalar:
        return Scalar(self, self.coerce(value))

    @property
    def zero(self) -> Scalar:
        return Scalar(self, self.reduce(0))

    @property
    def one(self) -> Scalar:
        return Scalar(self, self.reduce(1))

    def coerce(self, value):
        """Turn an int, Fraction, literal string or same-field Scalar into a raw value."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"scalar over {value.field} used in {self}")
            return value.value
        if isinstance(value, bool):
            raise InputError("booleans are not field elements")
        if isinstance(value, int):
            return self.reduce(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        if isinstance(value, str):
            return parse_scalar(value, self).value
        raise InputError(f"cannot interpret {value!r} as an element of {self}")

    def parse(self, text: str) -> Scalar:
        return parse_scalar(text, self)


@dataclass(frozen=True)
class Rationals(Field):
    characteristic = 0
    order = None

    def reduce(self, x):
        return Fraction(x)

    def from_fraction(self, x: Fraction):
        return x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def sort_key(self, x):
        return x

    def format(self, x) -> str:
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def elements(self):
        raise InputError("Q is infinite; elements cannot be enumerated")

    def to_json(self):
        return "Q"

    def __str__(self) -> str:
        return "Q"

    def __repr__(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int) or not is_prime(self.p):
            raise InputError(f"GF({self.p!r}): modulus must be prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    def reduce(self, x):
        return x % self.p

    def from_fraction(self, x: Fraction):
        den = x.denominator % self.p
        if den == 0:
            raise InputError(f"{x} has a denominator divisible by {self.p}")
        return x.numerator * pow(den, -1, self.p) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def sort_key(self, x):
        return x

    def format(self, x) -> str:
        return str(x)

    def elements(self):
        return [Scalar(self, r) for r in range(self.p)]

    def to_json(self):
        return {"GF": self.p}

    def __str__(self) -> str:
        return f"GF:{self.p}"

    def __repr__(self) -> str:
        return f"GF({self.p})"


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec) -> Field:
    """Accept ``"Q"``, ``"GF:p"``, ``"GF(p)"``, ``{"GF": p}`` or an existing Field."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, dict):
        if set(spec) != {"GF"}:
            raise InputError(f"unknown field descriptor {spec!r}")
        p = spec["GF"]
        if isinstance(p, bool) or not isinstance(p, int):
            raise InputError(f"GF modulus must be an integer, got {p!r}")
        return GF(p)
    if isinstance(spec, str):
        s = spec.strip()
        if s in ("Q", "QQ"):
            return QQ
        m = re.fullmatch(r"GF(?::|\()\s*(\d+)\s*\)?", s)
        if m:
            return GF(int(m.group(1)))
    raise InputError(f"unknown field descriptor {spec!r} (expected Q or GF:p)")


class Scalar:
    """Immutable field element in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.reduce(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.field, self.value))

    def _raw(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.value + b)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.value - b)

    def __rsub__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, b - self.value)

    def __mul__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.value * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.value * self.field.inv(b))

    def __rtruediv__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, b * self.field.inv(self.value))

    def __neg__(self):
        return Scalar(self.field, -self.value)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return Scalar(self.field, self.value**k)

    def inv(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.field.coerce(other)
            except InputError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return bool(self.value)

    def sort_key(self):
        return self.field.sort_key(self.value)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field!r}({str(self)!r})"


def parse_scalar(text: str, field: Field) -> Scalar:
    """Parse ``"a"`` or ``"a/b"``; GF(p) literals are reduced mod p."""
    if not isinstance(text, str):
        raise InputError(f"scalar literal must be a string, got {text!r}")
    m = _LITERAL.match(text)
    if not m:
        raise InputError(f"malformed scalar literal {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Scalar(field, field.from_fraction(Fraction(num, den)))


class Polynomial:
    """Univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("field", "_c")

    def __init__(self, field: Field, coefficients):
        c = [field.coerce(x) for x in coefficients]
        while c and not c[-1]:
            c.pop()
        self.field = field
        self._c = tuple(c)

    @classmethod
    def _from_raw(cls, field, raw):
        poly = cls.__new__(cls)
        c = list(raw)
        while c and not c[-1]:
            c.pop()
        poly.field = field
        poly._c = tuple(c)
        return poly

    @property
    def coefficients(self) -> tuple:
        return tuple(Scalar(self.field, x) for x in self._c)

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __call__(self, x) -> Scalar:
        x = self.field.coerce(x)
        acc = self.field.reduce(0)
        for c in reversed(self._c):
            acc = self.field.reduce(acc * x + c)
        return Scalar(self.field, acc)

    def monic(self) -> Polynomial:
        if not self._c:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        lead = self.field.inv(self._c[-1])
        return Polynomial._from_raw(self.field, (self.field.reduce(c * lead) for c in self._c))

    def divide_linear(self, root):
        """Synthetic division by (x - root); returns (quotient, remainder)."""
        r = self.field.coerce(root)
        red = self.field.reduce
        out = []
        acc = red(0)
        for c in reversed(self._c):
            acc = red(acc * r + c)
            out.append(acc)
        remainder = out.pop() if out else red(0)
        return Polynomial._from_raw(self.field, reversed(out)), Scalar(self.field, remainder)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self._c == other._c

    def __hash__(self):
        return hash((self.field, self._c))

    def __str__(self):
        if not self._c:
            return "0"
        fmt = self.field.format
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if not c:
                continue
            neg = isinstance(c, Fraction) and c < 0
            mag = fmt(-c if neg else c)
            if k == 0:
                body = mag
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == "1" else f"{mag}{mono}" if "/" not in mag else f"({mag}){mono}"
            terms.append(("-" if neg else "+", body))
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial({self.field!r}, {[self.field.format(c) for c in self._c]})"


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def _candidate_roots(poly: Polynomial):
    field = poly.field
    if field.order is not None:
        return range(field.order)
    den = lcm(*(c.denominator for c in poly._c))
    ints = [int(c * den) for c in poly._c]
    candidates = set()
    if ints[0] == 0:
        candidates.add(Fraction(0))
    while ints[0] == 0:
        ints.pop(0)
    if len(ints) == 1:
        return candidates
    for u in _divisors(ints[0]):
        for v in _divisors(ints[-1]):
            candidates.add(Fraction(u, v))
            candidates.add(Fraction(-u, v))
    return candidates


def roots_in_field(poly: Polynomial, multiplicities: bool = False):
    """Roots of ``poly`` lying in its field, sorted by the field's scalar order.

    Over GF(p) every element is tried; over Q the rational root theorem supplies
    the candidates.  With ``multiplicities=True`` returns ``(root, k)`` pairs.
    """
    if poly.is_zero():
        raise InputError("the zero polynomial vanishes everywhere")
    field = poly.field
    roots = [Scalar(field, r) for r in _candidate_roots(poly) if not poly(r)]
    roots.sort(key=Scalar.sort_key)
    if not multiplicities:
        return roots
    out = []
    for r in roots:
        k, q = 0, poly
        while True:
            quotient, rem = q.divide_linear(r)
            if rem:
                break
            k, q = k + 1, quotient
        out.append((r, k))
    return out
