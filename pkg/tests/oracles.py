"""Independent reference implementations used only by the tests."""

from fractions import Fraction
from itertools import product


def _padd(a, b, mod):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return [x % mod for x in out] if mod else out


def _pmul(a, b, mod):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return [x % mod for x in out] if mod else out


def _pdet(m, mod):
    """Laplace expansion along the first row of a matrix of polynomials."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = [0]
    for c in range(n):
        minor = [row[:c] + row[c + 1 :] for row in m[1:]]
        term = _pmul(m[0][c], _pdet(minor, mod), mod)
        if c % 2:
            term = [-x for x in term]
        total = _padd(total, term, mod)
    return total


def cofactor_char_poly(rows, mod=None):
    """det(xI - A) by cofactor expansion; coefficients lowest degree first."""
    n = len(rows)
    m = [[[-rows[i][j], 1 if i == j else 0] for j in range(n)] for i in range(n)]
    coeffs = _pdet(m, mod)
    if mod:
        coeffs = [x % mod for x in coeffs]
    else:
        coeffs = [Fraction(x) for x in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def projective_points_mod(p, d):
    """All vectors of GF(p)^d whose first non-zero coordinate is 1."""
    for v in product(range(p), repeat=d):
        nz = next((x for x in v if x), None)
        if nz == 1:
            yield v


def naive_common_eigenvectors(rows_list, p):
    """Common eigenvector points by testing A v parallel to v for every point."""
    d = len(rows_list[0])
    found = set()
    for v in projective_points_mod(p, d):
        ok = True
        for rows in rows_list:
            w = [sum(rows[i][j] * v[j] for j in range(d)) % p for i in range(d)]
            # w parallel to v iff all 2x2 minors vanish
            if any((w[i] * v[j] - w[j] * v[i]) % p for i in range(d) for j in range(i + 1, d)):
                ok = False
                break
        if ok:
            found.add(v)
    return found


def naive_violations(q, members):
    """Every non-empty I (1-based, sorted) whose union is proper and in which
    no member contributes an element of its own; straight from the definition."""
    from itertools import combinations

    full = set(range(1, q + 1))
    out = []
    p = len(members)
    for r in range(1, p + 1):
        for idx in combinations(range(p), r):
            union = set().union(*(members[i] for i in idx))
            if union == full:
                continue
            if all(set().union(*(members[i] for i in idx if i != j)) == union for j in idx):
                out.append(tuple(i + 1 for i in idx))
    return out
