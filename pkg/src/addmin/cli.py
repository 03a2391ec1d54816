"""Command-line front end: ``addmin <subcommand> --input FILE``.

Exit codes: 0 on success, 1 on bad input (the message names the field),
2 when a constrained or super problem has no solution (the empty report is
still written).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .breakpoints import InfeasibleError, InstanceError, ProblemInstance
from .eigensolver import DEFAULT_MAX_CELLS, CellLimitError, solve_constrained, solve_eigen
from .exactnum import fmt_rat, to_rat
from .oracle import DETECTION_TOL, check_constrained, check_eigenpair, check_super
from .paramsolve import family_sample
from .serialize import dumps, infeasible_super_max_doc, parse_instance, render_text, report_doc
from .supereigen import super_max, super_region

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2

SUBCOMMANDS = ("eigen", "constrained", "super-region", "super-max", "verify")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="addmin", description="Exact eigenproblems in the addition-min algebra.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in SUBCOMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--input", required=True, help="instance document (JSON)")
        s.add_argument("--output", help="write here instead of stdout")
        s.add_argument("--format", choices=("json", "text"))
        s.add_argument("--seed", type=int, default=0, help="seed for the per-family sample points")
        s.add_argument("--tol", default=None, help="oracle tolerance for verify (default 1e-9)")
        s.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
        s.add_argument("--force", action="store_true", help="ignore the cell-count guard")
        if name == "super-region":
            s.add_argument("--lambda", dest="lam", help="overrides the document's lambda")
        if name == "verify":
            s.add_argument("--x", required=True, help="comma-separated vector")
            s.add_argument("--lambda", dest="lam")
            s.add_argument("--mode", choices=("eigen", "constrained", "super"), default="eigen")
    return p


class _InputError(Exception):
    pass


def _load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise _InputError(f"input: cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise _InputError(f"input: malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _rat_arg(name: str, value: str) -> Fraction:
    try:
        return to_rat(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise _InputError(f"{name}: not a number: {value!r}") from None


def _add_samples(doc: dict, families, seed: int) -> None:
    for fd, fam in zip(doc["families"], families):
        try:
            s = family_sample(fam, 1, seed)[0]
        except ValueError:
            continue
        lam = fmt_rat(s.lam) if isinstance(s.lam, Fraction) else f"{float(s.lam):.12g}"
        fd["sample"] = {"lambda": lam, "x": [fmt_rat(v) for v in s.x], "approx": s.approx}


def _verify(args, inst: ProblemInstance) -> tuple[dict, str, int]:
    parts = [p for p in args.x.split(",") if p.strip()]
    x = [_rat_arg(f"x[{i}]", v) for i, v in enumerate(parts)]
    if len(x) != inst.n:
        raise _InputError(f"x: expected {inst.n} components, got {len(x)}")
    for i, v in enumerate(x):
        if not 0 <= v <= 1:
            raise _InputError(f"x[{i}]: value {fmt_rat(v)} outside [0, 1]")
    if not any(x):
        raise _InputError("x: the zero vector is never an eigenvector")
    lam = _rat_arg("lambda", args.lam) if args.lam is not None else None
    tol = float(_rat_arg("tol", args.tol)) if args.tol is not None else DETECTION_TOL
    if tol <= 0:
        raise _InputError("tol: must be positive")
    if args.mode == "eigen":
        v, label = check_eigenpair(inst, x, lam, tol), "eigenpair"
    elif args.mode == "constrained":
        if inst.b is None:
            raise _InputError("b: required for constrained verification")
        v, label = check_constrained(inst, x, lam, tol), "constrained eigenpair"
    else:
        if lam is None:
            raise _InputError("lambda: required for super verification")
        v, label = check_super(inst, x, lam, tol), "supereigenvector"
    doc = {
        "mode": "verify",
        "kind": v.kind,
        "holds": v.holds,
        "lambda": f"{v.lambda_inferred:.12g}",
        "max_residual": f"{v.max_residual:.3e}",
    }
    if v.holds:
        text = f"{label}: yes, λ = {v.lambda_inferred:.12g}\n"
    else:
        text = f"{label}: no (residual {v.max_residual:.3e} at λ = {v.lambda_inferred:.12g})\n"
    return doc, text, EXIT_OK


def _run(args) -> tuple[dict, str, int]:
    inst, doc_lam = parse_instance(_load(args.input))
    if args.command == "verify":
        return _verify(args, inst)
    if args.command == "eigen":
        rep = solve_eigen(inst, args.max_cells, args.force)
        doc = report_doc(rep)
        _add_samples(doc, rep.families, args.seed)
        return doc, render_text(rep, "eigen", inst), EXIT_OK
    if args.command == "constrained":
        if inst.b is None:
            raise _InputError("b: required for constrained solving")
        rep = solve_constrained(inst, args.max_cells, args.force)
        doc = report_doc(rep)
        _add_samples(doc, rep.families, args.seed)
        code = EXIT_OK if rep.feasible and rep.lambda_set else EXIT_INFEASIBLE
        return doc, render_text(rep, "constrained", inst), code
    if args.command == "super-region":
        lam = _rat_arg("lambda", args.lam) if args.lam is not None else doc_lam
        if lam is None:
            raise _InputError("lambda: required for super-region")
        if not 0 <= lam <= inst.n:
            raise _InputError(f"lambda: value {fmt_rat(lam)} outside [0, {inst.n}]")
        reg = super_region(inst, lam)
        code = EXIT_OK if reg.pieces else EXIT_INFEASIBLE
        return report_doc(reg, inst), render_text(reg, "super-region", inst), code
    # super-max
    if inst.b is None:
        raise _InputError("b: required for super-max")
    try:
        res = super_max(inst)
    except InfeasibleError as e:
        return infeasible_super_max_doc(inst, str(e)), render_text(None, "super-max", inst), EXIT_INFEASIBLE
    return report_doc(res, inst), render_text(res, "super-max", inst), EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, text, code = _run(args)
    except (_InputError, InstanceError, CellLimitError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    fmt = args.format or ("text" if args.command == "verify" else "json")
    out = dumps(doc) if fmt == "json" else text
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
        except OSError as e:
            print(f"error: output: cannot write {args.output}: {e.strerror}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
