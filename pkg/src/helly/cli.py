"""Command-line front end.

Exit codes: 0 verified / answer produced, 1 property refuted or certificate
absent, 2 input error, 3 budget exceeded, 4 internal contradiction.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import ContradictionError, HellyError, InputError
from .fields import parse_field
from .harness import STRATEGIES, HellyReport, generate_family, helly_check_eigenvectors, helly_check_invariant
from .invariant import support_union_pipeline
from .io import (
    canonical_json,
    dump_family,
    family_to_json,
    load_family,
    load_set_family,
    load_subspaces,
    subspace_to_json,
    vector_to_json,
)
from .linalg import Matrix, Subspace
from .set_family import exhaustive_verify_bound, extremal_family, find_redundant_union_witness, lemma_condition_holds
from .sharpness import build_sharpness_family, verify_sharpness
from .spectra import common_eigen_refinement

SCHEMA_VERSION = 1
STATUS = {0: "verified", 1: "refuted", 2: "input_error", 3: "budget_exceeded", 4: "contradiction"}


def _fmt_vec(v: Matrix) -> str:
    return "(" + ", ".join(vector_to_json(v)) + ")"


def _fmt_space(s: Subspace) -> str:
    return "span{" + ", ".join("(" + ", ".join(r) + ")" for r in s.tolist()) + "}"


def cmd_common_eig(args):
    fam = load_family(args.family)
    lines = common_eigen_refinement(fam)
    result = {
        "field": fam.field.to_json(),
        "dim": fam.dim,
        "lines": [
            {
                "basis": subspace_to_json(line.subspace),
                "eigenvalues": {name: str(line.assignment[name]) for name in fam.names},
            }
            for line in lines
        ],
    }
    if not lines:
        return 1, "none", result
    text = []
    for line in lines:
        values = ", ".join(f"{name}={line.assignment[name]}" for name in fam.names)
        text.append(f"{_fmt_space(line.subspace)}  [{values}]")
    return 0, "\n".join(text), result


def cmd_verify_sharpness(args):
    field = parse_field(args.field)
    fam = build_sharpness_family(args.d, field)
    report = verify_sharpness(fam)
    expected = 3 * args.d // 2
    result = {
        "d": args.d,
        "field": field.to_json(),
        "operators": report.size,
        "expected_operators": expected,
        "sharp": report.sharp,
        "oracle_checked": report.oracle_checked,
        "leave_one_out": [
            {"omitted": name, "witness": None if w is None else vector_to_json(w)}
            for name, w in zip(report.names, report.leave_one_out)
        ],
        "full_family_witness": None if report.full_witness is None else vector_to_json(report.full_witness),
    }
    text = [f"d={args.d} over {field}: {report.size} operators (floor(3d/2) = {expected})"]
    for name, w in zip(report.names, report.leave_one_out):
        text.append(f"  without {name}: " + ("no common eigenvector" if w is None else f"common eigenvector {_fmt_vec(w)}"))
    text.append(
        "  full family: "
        + ("no common eigenvector" if report.full_witness is None else f"common eigenvector {_fmt_vec(report.full_witness)}")
    )
    text.append(f"  brute-force cross-check: {'yes' if report.oracle_checked else 'skipped'}")
    text.append("sharp" if report.sharp else "NOT sharp")
    return (0 if report.sharp and report.size == expected else 1), "\n".join(text), result


def cmd_lemma_verify(args):
    report = exhaustive_verify_bound(args.q, samples=args.samples, seed=args.seed, threads=args.threads)
    result = {
        "q": report.q,
        "family_size": report.family_size,
        "candidates": report.candidates,
        "families_checked": report.families_checked,
        "mode": report.mode,
        "seed": report.seed,
    }
    return 0, report.summary(), result


def cmd_lemma_extremal(args):
    fam = extremal_family(args.q)
    verdict = lemma_condition_holds(fam)
    result = {
        "q": fam.q,
        "p": fam.p,
        "family": fam.to_json(),
        "condition_holds": verdict.holds,
        "violating": None if verdict.violating is None else list(verdict.violating),
    }
    members = ", ".join("{" + ",".join(map(str, s)) + "}" for s in fam.to_json()["members"])
    text = f"q={fam.q}, p={fam.p}: {members}\ncondition " + ("holds" if verdict.holds else f"fails at I={verdict.violating}")
    return (0 if verdict.holds else 1), text, result


def cmd_lemma_witness(args):
    fam = load_set_family(args.setfamily)
    found = find_redundant_union_witness(fam)
    result = {"q": fam.q, "p": fam.p, "witness": None}
    if found is None:
        return 1, "no redundant-union witness (condition holds)", result
    idx, union = found
    result["witness"] = {"I": list(idx), "M": sorted(union)}
    return 0, f"I={list(idx)} M={sorted(union)}", result


def _helly_result(report: HellyReport):
    cert = report.certificate
    if isinstance(cert, Matrix):
        cert = vector_to_json(cert)
    elif isinstance(cert, Subspace):
        cert = subspace_to_json(cert)
    return {
        "kind": report.kind,
        "family_id": report.family_id,
        "k": report.k,
        "size": report.size,
        "dim": report.dim,
        "subset_size": report.subset_size,
        "subsets_checked": report.subsets_checked,
        "failures": [list(f) for f in report.failures],
        "full_family": report.full_family,
        "certificate": cert,
        "theorem_applies": report.theorem_applies,
        "degenerate": report.degenerate,
        "implication_holds": report.implication_holds,
        "contradiction": report.contradiction,
    }


def _helly_text(report: HellyReport) -> str:
    lines = [
        f"{report.family_id}: {report.size} operators on K^{report.dim}, "
        f"{report.subsets_checked} subfamilies of size {report.subset_size}"
        + (" (degenerate sweep: full family only)" if report.degenerate else "")
    ]
    if report.failures:
        lines.append(f"  {len(report.failures)} without a common {report.kind}:")
        lines += ["    " + " ".join(map(str, f)) for f in report.failures]
    else:
        lines.append(f"  all have a common {report.kind}")
    lines.append(f"  full family: {'yes' if report.full_family else 'no'}")
    if report.contradiction:
        lines.append("CONTRADICTION")
    else:
        lines.append("Helly implication " + ("holds" if report.implication_holds else "fails"))
    return "\n".join(lines)


def _run_helly(check, fam, k, family_id, **kw):
    try:
        report = check(fam, k, family_id=family_id, **kw)
    except ContradictionError as e:
        if isinstance(e.evidence, HellyReport):
            e.payload = _helly_result(e.evidence)
            e.text = _helly_text(e.evidence)
        raise
    return (0 if report.implication_holds else 1), _helly_text(report), _helly_result(report)


def cmd_helly_eig(args):
    fam = load_family(args.family)
    return _run_helly(helly_check_eigenvectors, fam, args.k, args.family, threads=args.threads)


def cmd_helly_inv(args):
    fam = load_family(args.family)
    return _run_helly(helly_check_invariant, fam, args.l, args.family)


def cmd_invsub(args):
    fam = load_family(args.family)
    spaces = load_subspaces(args.subspaces, fam)
    res = support_union_pipeline(fam, fam.index_of(args.a0), spaces)
    others = [n for n in fam.names if n != args.a0]
    result = {
        "a0": args.a0,
        "supports": {name: sorted(s) for name, s in zip(others, res.supports)},
        "witness": [others[i - 1] for i in res.witness],
        "union": sorted(res.union),
        "subspace": subspace_to_json(res.subspace),
    }
    text = "\n".join(
        [f"  M({name}) = {sorted(s)}" for name, s in zip(others, res.supports)]
        + [
            f"redundant union over {', '.join(result['witness'])}: M = {sorted(res.union)}",
            f"common invariant subspace: {_fmt_space(res.subspace)}",
        ]
    )
    return 0, text, result


def cmd_gen(args):
    fam = generate_family(args.d, parse_field(args.field), args.n, args.seed, args.strategy)
    result = {"strategy": args.strategy, "seed": args.seed, "output": args.output, "family": family_to_json(fam)}
    if args.output:
        dump_family(fam, args.output)
        return 0, f"wrote {len(fam)} operators on K^{fam.dim} over {fam.field} to {args.output}", result
    return 0, dump_family(fam).rstrip("\n"), result


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report instead of text")
    common.add_argument("--threads", type=_positive, default=1, help="worker processes for sweeps")

    parser = _Parser(prog="helly", description="Common eigenvectors, invariant subspaces and Helly-type checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("common-eig", parents=[common], help="common eigenvector lines of a family")
    p.add_argument("family")
    p.set_defaults(func=cmd_common_eig)

    p = sub.add_parser("verify-sharpness", parents=[common], help="build and verify the floor(3d/2) family")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--field", required=True, help="Q or GF:p")
    p.set_defaults(func=cmd_verify_sharpness)

    lemma = sub.add_parser("lemma", help="set-family union condition")
    lsub = lemma.add_subparsers(dest="lemma_command", required=True, parser_class=_Parser)
    p = lsub.add_parser("verify", parents=[common], help="no 2q-1 subsets satisfy the condition")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--samples", type=_positive)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lemma_verify, command="lemma verify")
    p = lsub.add_parser("extremal", parents=[common], help="print the 2q-2 extremal family")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_lemma_extremal, command="lemma extremal")
    p = lsub.add_parser("witness", parents=[common], help="find a redundant-union witness")
    p.add_argument("setfamily")
    p.set_defaults(func=cmd_lemma_witness, command="lemma witness")

    p = sub.add_parser("helly-eig", parents=[common], help="k-subset sweep for common eigenvectors")
    p.add_argument("family")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_helly_eig)

    p = sub.add_parser("helly-inv", parents=[common], help="l-subset sweep for common invariant subspaces")
    p.add_argument("family")
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_helly_inv)

    p = sub.add_parser("invsub", parents=[common], help="combine leave-one-out invariant subspaces")
    p.add_argument("family")
    p.add_argument("--a0", required=True, help="name of the distinct-spectrum operator")
    p.add_argument("--subspaces", required=True)
    p.set_defaults(func=cmd_invsub)

    p = sub.add_parser("gen", parents=[common], help="generate a seeded random family")
    p.add_argument("--strategy", required=True, choices=STRATEGIES)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def _emit(out, as_json, command, code, text, result, error=None):
    if as_json:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "status": STATUS[code],
            "exit_code": code,
            "result": result,
        }
        if error is not None:
            payload["error"] = error
        out.write(canonical_json(payload))
    elif text:
        out.write(text + "\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
    except InputError as e:
        _emit(out, as_json, None, 2, None, None, str(e))
        if not as_json:
            err.write(f"error: {e}\n")
        return 2
    command = args.command
    try:
        code, text, result = args.func(args)
    except HellyError as e:
        code = e.exit_code
        result = getattr(e, "payload", None)
        _emit(out, args.json, command, code, getattr(e, "text", None), result, str(e))
        if not args.json:
            err.write(f"error: {e}\n")
        return code
    _emit(out, args.json, command, code, text, result)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
