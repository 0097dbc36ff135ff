"""Helly-property sweeps and seeded family generators.

A sweep checks every subfamily of size min(k, n) (smaller subfamilies are
implied: a common eigenvector or invariant subspace of a set is common to its
subsets) and the full family.  When the relevant theorem covers k, a sweep in
which every k-subfamily passes but the full family fails is a CONTRADICTION.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .budgets import charge, enumeration_budget, subset_budget
from .errors import ContradictionError, InputError
from .fields import Field
from .invariant import count_subspaces, distinct_spectrum_basis, enumerate_subspaces
from .linalg import Matrix, Subspace, inverse, is_invariant, rank
from .sharpness import build_sharpness_family
from .spectra import OperatorFamily, _refine_step, common_eigen_refinement

__all__ = [
    "HellyReport",
    "STRATEGIES",
    "helly_check_eigenvectors",
    "helly_check_invariant",
    "generate_family",
    "leave_one_out_instance",
    "support_union_instance",
    "random_scalar",
    "random_invertible",
]

STRATEGIES = ("uniform", "planted_eigenvector", "planted_invariant", "block_scalar", "perturbed_sharpness")


@dataclass(frozen=True)
class HellyReport:
    kind: str  # "eigenvector" or "invariant subspace"
    family_id: str
    size: int
    dim: int
    k: int
    subsets_checked: int
    failures: tuple[tuple[int, ...], ...]  # 1-based operator positions
    full_family: bool
    certificate: object  # common eigenvector (1 x d Matrix) or invariant Subspace, when one exists
    theorem_applies: bool

    @property
    def subset_size(self) -> int:
        return min(self.k, self.size)

    @property
    def degenerate(self) -> bool:
        return self.size <= self.k

    @property
    def implication_holds(self) -> bool:
        return bool(self.failures) or self.full_family

    @property
    def contradiction(self) -> bool:
        return self.theorem_applies and not self.implication_holds


def _finish(report: HellyReport, raise_on_contradiction: bool) -> HellyReport:
    if report.contradiction and raise_on_contradiction:
        raise ContradictionError(
            f"CONTRADICTION: every {report.subset_size}-subfamily of {report.family_id} passes "
            f"but the full family has no common {report.kind}",
            evidence=report,
        )
    return report


def _eigen_failures(fam: OperatorFamily, s: int, first: int | None = None):
    n, ops = len(fam), fam.operators
    root = [(Subspace.full(fam.field, fam.dim), ())]
    failures = []

    def walk(start, chosen, lines):
        if len(chosen) == s:
            if not lines:
                failures.append(tuple(i + 1 for i in chosen))
            return
        for i in range(start, n - (s - len(chosen)) + 1):
            walk(i + 1, chosen + (i,), _refine_step(lines, ops[i]) if lines else lines)

    if first is None:
        walk(0, (), root)
    else:
        walk(first + 1, (first,), _refine_step(root, ops[first]))
    return failures


def helly_check_eigenvectors(
    fam: OperatorFamily,
    k: int,
    budget: int | None = None,
    threads: int = 1,
    family_id: str = "family",
    raise_on_contradiction: bool = True,
) -> HellyReport:
    """Sweep every min(k, n)-subfamily for a common eigenvector."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InputError(f"k must be a positive integer, got {k!r}")
    n = len(fam)
    s = min(k, n)
    total = comb(n, s)
    charge(total, subset_budget(budget), f"{s}-subsets of {n} operators")
    if threads > 1 and s > 0:
        from concurrent.futures import ProcessPoolExecutor

        firsts = list(range(n - s + 1))
        with ProcessPoolExecutor(threads) as pool:
            parts = pool.map(_eigen_failures, [fam] * len(firsts), [s] * len(firsts), firsts)
            failures = [f for part in parts for f in part]
    else:
        failures = _eigen_failures(fam, s)
    lines = common_eigen_refinement(fam)
    report = HellyReport(
        "eigenvector",
        family_id,
        n,
        fam.dim,
        k,
        total,
        tuple(sorted(failures)),
        bool(lines),
        lines[0].vector() if lines else None,
        k >= 3 * fam.dim // 2,
    )
    return _finish(report, raise_on_contradiction)


def helly_check_invariant(
    fam: OperatorFamily,
    l: int,
    budget: int | None = None,
    family_id: str = "family",
    raise_on_contradiction: bool = True,
) -> HellyReport:
    """Sweep every min(l, n)-subfamily for a common non-trivial invariant subspace.

    Each subspace of GF(p)^d is tested once; a subfamily passes when some
    subspace is invariant under all of its members.
    """
    if isinstance(l, bool) or not isinstance(l, int) or l < 1:
        raise InputError(f"l must be a positive integer, got {l!r}")
    field, d, n = fam.field, fam.dim, len(fam)
    charge(count_subspaces(field, d), enumeration_budget(budget), f"subspaces of GF({field.order})^{d}")
    s = min(l, n)
    total = comb(n, s)
    charge(total, subset_budget(budget), f"{s}-subsets of {n} operators")
    all_mask = (1 << n) - 1
    masks, first_common = set(), None
    for dim in range(1, d):
        for space in enumerate_subspaces(field, d, dim):
            m = 0
            for i, a in enumerate(fam.operators):
                if is_invariant(a, space):
                    m |= 1 << i
            if m:
                masks.add(m)
            if m == all_mask and first_common is None:
                first_common = space
    masks = [m for m in masks if not any(m != o and m & o == m for o in masks)]
    failures = []
    for combo in itertools.combinations(range(n), s):
        want = sum(1 << i for i in combo)
        if not any(want & m == want for m in masks):
            failures.append(tuple(i + 1 for i in combo))
    has_distinct = any(distinct_spectrum_basis(a) is not None for a in fam.operators)
    applies = l >= d * d or (l >= 2 * d - 1 and has_distinct)
    report = HellyReport(
        "invariant subspace",
        family_id,
        n,
        d,
        l,
        total,
        tuple(failures),
        first_common is not None,
        first_common,
        applies,
    )
    return _finish(report, raise_on_contradiction)


def random_scalar(rng: random.Random, field: Field):
    if field.order is not None:
        return rng.randrange(field.order)
    return Fraction(rng.randint(-4, 4), rng.choice((1, 1, 1, 2, 3)))


def _random_matrix(rng, field, d, allowed=None):
    zero = field.reduce(0)
    return Matrix._raw(
        field,
        [
            [field.coerce(random_scalar(rng, field)) if allowed is None or allowed(i, j) else zero for j in range(d)]
            for i in range(d)
        ],
        d,
    )


def random_invertible(rng: random.Random, field: Field, d: int) -> Matrix:
    while True:
        m = _random_matrix(rng, field, d)
        if rank(m) == d:
            return m


def _conjugate(p, p_inv, t):
    return p @ t @ p_inv


def generate_family(d: int, field: Field, n: int, seed: int, strategy: str = "uniform") -> OperatorFamily:
    """Deterministic random family of ``n`` operators on K^d.

    Strategies:

    - ``uniform``: independent random entries.
    - ``planted_eigenvector``: P T P^-1 with T[i][0] = 0 for i > 0, so P e_1 is a
      common eigenvector.
    - ``planted_invariant``: T block upper triangular with a shared random block
      size k in [1, d-1]; span(P e_1..P e_k) is invariant.
    - ``block_scalar``: a shared random partition of the coordinates into
      contiguous blocks; each operator is a random scalar on each block, then
      conjugated.  All operators commute and are diagonalizable.
    - ``perturbed_sharpness``: the floor(3d/2) sharpness family, each operator
      replaced by a I + b A with b != 0 and conjugated; truncated to n, or padded
      with uniform operators.
    """
    if strategy not in STRATEGIES:
        raise InputError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise InputError(f"d must be an integer >= 2, got {d!r}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    rng = random.Random(seed)
    if strategy == "uniform":
        return OperatorFamily.of([_random_matrix(rng, field, d) for _ in range(n)])
    p = random_invertible(rng, field, d)
    p_inv = inverse(p)
    if strategy == "planted_eigenvector":
        ops = [_random_matrix(rng, field, d, lambda i, j: j > 0 or i == 0) for _ in range(n)]
    elif strategy == "planted_invariant":
        k = rng.randint(1, d - 1)
        ops = [_random_matrix(rng, field, d, lambda i, j: not (i >= k and j < k)) for _ in range(n)]
    elif strategy == "block_scalar":
        cuts = sorted(rng.sample(range(1, d), rng.randint(0, d - 1)))
        bounds = list(zip([0] + cuts, cuts + [d]))
        ops = []
        for _ in range(n):
            values = []
            for lo, hi in bounds:
                values += [random_scalar(rng, field)] * (hi - lo)
            ops.append(Matrix.diag(field, values))
    else:
        base = build_sharpness_family(d, field).operators
        ops = []
        for a in base[:n]:
            b = 0
            while not field.reduce(b):
                b = random_scalar(rng, field)
            ops.append(Matrix.identity(field, d) * random_scalar(rng, field) + a * b)
        ops += [_random_matrix(rng, field, d) for _ in range(n - len(ops))]
    return OperatorFamily.of([_conjugate(p, p_inv, t) for t in ops])


def leave_one_out_instance(d: int, field: Field, n: int, seed: int, values: int = 2):
    """A family where every leave-one-out subfamily has a common eigenvector,
    plus one witness per operator.

    The coordinates are cut into random contiguous blocks and every operator is
    a scalar (drawn from ``values`` field elements) on each block, conjugated
    by one random P.  Joint eigenspaces are then spans of whole blocks, often
    of dimension >= 2, and each witness is a random vector in a random joint
    eigenspace of its subfamily, so witnesses are rarely parallel.
    """
    rng = random.Random(seed)
    p = random_invertible(rng, field, d)
    p_inv = inverse(p)
    pool = [field.reduce(x) for x in range(values)]
    cuts = sorted(rng.sample(range(1, d), rng.randint(0, d - 1)))
    bounds = list(zip([0] + cuts, cuts + [d]))
    ops = []
    for _ in range(n):
        diag = []
        for lo, hi in bounds:
            diag += [rng.choice(pool)] * (hi - lo)
        ops.append(_conjugate(p, p_inv, Matrix.diag(field, diag)))
    fam = OperatorFamily.of(ops)
    witnesses = []
    red = field.reduce
    for i in range(n):
        space = rng.choice(common_eigen_refinement(fam.without(i))).subspace
        while True:
            coeffs = [field.coerce(random_scalar(rng, field)) for _ in range(space.dim)]
            x = [red(0)] * d
            for c, row in zip(coeffs, space._rows):
                x = [red(a + c * b) for a, b in zip(x, row)]
            if any(x):
                break
        witnesses.append(Matrix._raw(field, [x], d))
    return fam, witnesses


def _distinct_values(rng, field, d):
    if field.order is not None:
        if field.order < d:
            raise InputError(f"{field} has fewer than {d} distinct eigenvalues")
        return sorted(field.reduce(x) for x in rng.sample(range(field.order), d))
    return sorted(Fraction(x) for x in rng.sample(range(-2 * d, 2 * d + 1), d))


def support_union_instance(d: int, field: Field, seed: int, supports=None):
    """Family A0, A1..Ap with A0 of distinct spectrum and leave-one-out
    invariant subspaces H_j = span(P e_i : i in M_j).

    ``supports`` are the sets M_j (1-based subsets of [d]); by default 2d - 1
    random non-empty proper subsets.  Each A_j is random on exactly the
    positions (in eigen coordinates) that keep every H_i with i != j invariant.
    The eigenvalues of A0 increase along P's columns, so the M_j are also the
    supports in A0's canonical eigenbasis.
    Returns ``(family, a0_index, leave_one_out)`` with ``a0_index == 0``.
    """
    rng = random.Random(seed)
    if supports is None:
        choices = range(1, (1 << d) - 1)
        masks = [rng.choice(choices) for _ in range(2 * d - 1)]
        supports = [frozenset(i + 1 for i in range(d) if m >> i & 1) for m in masks]
    supports = [frozenset(s) for s in supports]
    p = random_invertible(rng, field, d)
    p_inv = inverse(p)
    a0 = _conjugate(p, p_inv, Matrix.diag(field, _distinct_values(rng, field, d)))
    ops = [a0]
    for j in range(len(supports)):
        others = [supports[i] for i in range(len(supports)) if i != j]

        def allowed(r, c, others=others):
            return all(r + 1 in s for s in others if c + 1 in s)

        ops.append(_conjugate(p, p_inv, _random_matrix(rng, field, d, allowed)))
    fam = OperatorFamily.of(ops, [f"A{i}" for i in range(len(ops))])
    columns = p.T
    spaces = [Subspace(field, d, [columns._data[i - 1] for i in sorted(s)]) for s in supports]
    return fam, 0, spaces
