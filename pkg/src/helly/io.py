"""JSON file formats.

Family file::

    {"field": "Q" | {"GF": 5}, "dim": 2,
     "operators": [{"name": "A1", "matrix": [["1", "0"], ["0", "2"]]}]}

Set family file::

    {"q": 3, "members": [[1], [1, 2], [3], [2, 3]]}

Subspace file: a list of subspaces (one per operator other than A0, in family
order) or an object keyed by operator name; each subspace is a list of basis
rows of scalar strings.  Scalars are always strings so exactness survives any
JSON tooling.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import HellyError, InputError
from .fields import parse_field, parse_scalar
from .linalg import Matrix, Subspace
from .set_family import SetFamily
from .spectra import OperatorFamily

__all__ = [
    "canonical_json",
    "read_json",
    "family_from_json",
    "family_to_json",
    "load_family",
    "dump_family",
    "set_family_from_json",
    "load_set_family",
    "subspace_from_json",
    "subspace_to_json",
    "load_subspaces",
    "vector_to_json",
]


def canonical_json(obj) -> str:
    """Byte-stable serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def read_json(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def _where(exc: HellyError, where: str) -> InputError:
    return InputError(f"{where}: {exc}")


def _matrix(field, rows, dim, where) -> Matrix:
    if not isinstance(rows, list) or len(rows) != dim:
        raise InputError(f"{where}: expected {dim} rows")
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise InputError(f"{where}[{r}]: expected {dim} entries")
        vals = []
        for c, x in enumerate(row):
            if not isinstance(x, str):
                raise InputError(f"{where}[{r}][{c}]: scalars must be strings, got {x!r}")
            try:
                vals.append(parse_scalar(x, field))
            except InputError as e:
                raise _where(e, f"{where}[{r}][{c}]") from None
        out.append(vals)
    return Matrix(field, out)


def family_from_json(obj) -> OperatorFamily:
    if not isinstance(obj, dict):
        raise InputError("family file must be a JSON object")
    for key in ("field", "dim", "operators"):
        if key not in obj:
            raise InputError(f"family file is missing {key!r}")
    field = parse_field(obj["field"])
    dim = obj["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 2:
        raise InputError(f"dim must be an integer >= 2, got {dim!r}")
    ops = obj["operators"]
    if not isinstance(ops, list) or not ops:
        raise InputError("operators must be a non-empty list")
    names, matrices = [], []
    for i, op in enumerate(ops):
        if not isinstance(op, dict) or "name" not in op or "matrix" not in op:
            raise InputError(f"operators[{i}]: expected an object with 'name' and 'matrix'")
        if not isinstance(op["name"], str):
            raise InputError(f"operators[{i}].name must be a string")
        names.append(op["name"])
        matrices.append(_matrix(field, op["matrix"], dim, f"operators[{i}].matrix"))
    return OperatorFamily(field, dim, tuple(matrices), tuple(names))


def family_to_json(fam: OperatorFamily) -> dict:
    return {
        "field": fam.field.to_json(),
        "dim": fam.dim,
        "operators": [{"name": name, "matrix": a.tolist()} for name, a in fam],
    }


def _with_path(path, fn, obj):
    try:
        return fn(obj)
    except InputError as e:
        raise InputError(f"{path}: {e}") from None


def load_family(path) -> OperatorFamily:
    return _with_path(path, family_from_json, read_json(path))


def dump_family(fam: OperatorFamily, path=None) -> str:
    text = canonical_json(family_to_json(fam))
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def set_family_from_json(obj) -> SetFamily:
    if not isinstance(obj, dict) or "q" not in obj or "members" not in obj:
        raise InputError("set family file must be an object with 'q' and 'members'")
    q, members = obj["q"], obj["members"]
    if isinstance(q, bool) or not isinstance(q, int):
        raise InputError(f"q must be an integer, got {q!r}")
    if not isinstance(members, list) or not all(isinstance(m, list) for m in members):
        raise InputError("members must be a list of lists of integers")
    return SetFamily.from_sets(q, members)


def load_set_family(path) -> SetFamily:
    return _with_path(path, set_family_from_json, read_json(path))


def subspace_from_json(rows, field, dim, where="subspace") -> Subspace:
    if not isinstance(rows, list):
        raise InputError(f"{where}: expected a list of basis rows")
    vectors = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise InputError(f"{where}[{r}]: expected {dim} entries")
        try:
            vectors.append([parse_scalar(x, field) for x in row])
        except InputError as e:
            raise _where(e, f"{where}[{r}]") from None
    return Subspace(field, dim, vectors)


def subspace_to_json(s: Subspace) -> list:
    return s.tolist()


def vector_to_json(v: Matrix) -> list:
    return v.tolist()[0]


def load_subspaces(path, fam: OperatorFamily):
    obj = read_json(path)

    def parse(obj):
        if isinstance(obj, dict):
            return {k: subspace_from_json(v, fam.field, fam.dim, f"subspaces[{k!r}]") for k, v in obj.items()}
        if isinstance(obj, list):
            return [subspace_from_json(v, fam.field, fam.dim, f"subspaces[{i}]") for i, v in enumerate(obj)]
        raise InputError("subspace file must be a list or an object keyed by operator name")

    return _with_path(path, parse, obj)
