"""JSON documents for instances and reports, plus a plain-text rendering.

Rationals are written as strings: a decimal when the expansion terminates,
otherwise ``p/q``.  Irrational endpoints carry their defining polynomial and
isolating interval so that reading a report back gives an equal object.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Union

from .breakpoints import InstanceError, ProblemInstance
from .eigensolver import SolveReport, SolveStats
from .exactnum import (
    AlgebraicNumber,
    LambdaSet,
    Piece,
    Poly,
    RatFun,
    fmt_endpoint,
    fmt_rat,
    to_rat,
)
from .paramsolve import Curve, Pencil
from .polyhedron import Polyhedron, Row
from .supereigen import CellOptimum, SuperMaxResult, SuperPiece, SuperRegion

Report = Union[SolveReport, SuperRegion, SuperMaxResult]


# ---------------------------------------------------------------- instances

def parse_instance(doc: Any) -> tuple[ProblemInstance, Optional[Fraction]]:
    """Validate an instance document; returns the instance and the optional ``lambda``."""
    if not isinstance(doc, dict):
        raise InstanceError("document", "expected a JSON object")
    if "A" not in doc:
        raise InstanceError("A", "missing")
    A = doc["A"]
    if not isinstance(A, list):
        raise InstanceError("A", "expected an array of rows")
    if "n" in doc:
        n = doc["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InstanceError("n", f"expected a positive integer, got {n!r}")
        if n != len(A):
            raise InstanceError("n", f"n = {n} but A has {len(A)} rows")
    b = doc.get("b")
    if b is not None and not isinstance(b, list):
        raise InstanceError("b", "expected an array")
    inst = ProblemInstance.from_values(A, b)
    lam = None
    if doc.get("lambda") is not None:
        try:
            lam = to_rat(doc["lambda"])
        except (TypeError, ValueError, ZeroDivisionError):
            raise InstanceError("lambda", f"not a number: {doc['lambda']!r}") from None
        if not 0 <= lam <= inst.n:
            raise InstanceError("lambda", f"value {doc['lambda']} outside [0, {inst.n}]")
    return inst, lam


def instance_doc(inst: ProblemInstance, lam: Optional[Fraction] = None) -> dict:
    doc: dict = {"n": inst.n, "A": [[fmt_rat(a) for a in row] for row in inst.A]}
    if inst.b is not None:
        doc["b"] = [fmt_rat(v) for v in inst.b]
    if lam is not None:
        doc["lambda"] = fmt_rat(lam)
    return doc


# ------------------------------------------------------------ number pieces

def _rats(xs) -> list[str]:
    return [fmt_rat(x) for x in xs]


def _parse_rats(xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


def endpoint_doc(e) -> Union[str, dict]:
    if isinstance(e, AlgebraicNumber):
        return {
            "approx": f"{float(e):.12g}",
            "err": f"{float(e.width):.0e}",
            "poly": _rats(e.poly.coeffs),
            "interval": [fmt_rat(e.lo), fmt_rat(e.hi)],
        }
    return fmt_rat(e)


def parse_endpoint(d):
    if isinstance(d, dict):
        lo, hi = d["interval"]
        return AlgebraicNumber(Poly(_parse_rats(d["poly"])), Fraction(lo), Fraction(hi))
    return Fraction(d)


def lambda_set_doc(ls: LambdaSet) -> list[dict]:
    return [
        {
            "lo": endpoint_doc(p.lo),
            "hi": endpoint_doc(p.hi),
            "lo_closed": p.lo_closed,
            "hi_closed": p.hi_closed,
            "exact": p.exact,
        }
        for p in ls.pieces
    ]


def parse_lambda_set(doc) -> LambdaSet:
    return LambdaSet(tuple(
        Piece(parse_endpoint(p["lo"]), parse_endpoint(p["hi"]), p["lo_closed"], p["hi_closed"])
        for p in doc
    ))


def ratfun_doc(f: RatFun) -> dict:
    return {"num": _rats(f.num.coeffs), "den": _rats(f.den.coeffs)}


def parse_ratfun(d) -> RatFun:
    return RatFun(Poly(_parse_rats(d["num"])), Poly(_parse_rats(d["den"])))


def polyhedron_doc(p: Polyhedron) -> dict:
    return {
        "nvars": p.nvars,
        "rows": [{"coeffs": _rats(r.coeffs), "rel": r.rel, "rhs": fmt_rat(r.rhs)} for r in p.rows],
    }


def parse_polyhedron(d) -> Polyhedron:
    rows = tuple(Row(_parse_rats(r["coeffs"]), r["rel"], Fraction(r["rhs"])) for r in d["rows"])
    return Polyhedron(d["nvars"], rows)


# ----------------------------------------------------------------- families

def family_doc(fam) -> dict:
    if isinstance(fam, Curve):
        return {
            "kind": "curve",
            "cell": list(fam.cell_index),
            "lambda_set": lambda_set_doc(fam.lambda_set),
            "coords": [ratfun_doc(f) for f in fam.coords],
        }
    return {
        "kind": "pencil",
        "cell": list(fam.cell_index),
        "lambda": endpoint_doc(fam.lambda_star),
        "approx": fam.approx,
        "base": _rats(fam.base),
        "basis": [_rats(v) for v in fam.basis],
        "region": polyhedron_doc(fam.region),
    }


def parse_family(d):
    cell = tuple(d["cell"])
    if d["kind"] == "curve":
        return Curve(cell, parse_lambda_set(d["lambda_set"]), tuple(parse_ratfun(f) for f in d["coords"]))
    return Pencil(
        cell,
        parse_endpoint(d["lambda"]),
        _parse_rats(d["base"]),
        tuple(_parse_rats(v) for v in d["basis"]),
        parse_polyhedron(d["region"]),
        d["approx"],
    )


# ------------------------------------------------------------------ reports

def _stats_doc(s: SolveStats) -> dict:
    # wall time is left out so equal inputs give byte-identical output
    return {
        "cells_enumerated": s.cells_enumerated,
        "cells_nonempty": s.cells_nonempty,
        "singular_roots_checked": s.singular_roots_checked,
    }


def _super_region_doc(r: SuperRegion) -> dict:
    return {
        "lambda": fmt_rat(r.lam),
        "pieces": [
            {"cell": list(p.cell_index), "polyhedron": polyhedron_doc(p.polyhedron), "witness": _rats(p.witness)}
            for p in r.pieces
        ],
    }


def _parse_super_region(d) -> SuperRegion:
    return SuperRegion(Fraction(d["lambda"]), tuple(
        SuperPiece(tuple(p["cell"]), parse_polyhedron(p["polyhedron"]), _parse_rats(p["witness"]))
        for p in d["pieces"]
    ))


def report_doc(report: Report, instance: Optional[ProblemInstance] = None) -> dict:
    if isinstance(report, SolveReport):
        return {
            "mode": report.mode,
            "instance": instance_doc(report.instance),
            "feasible": report.feasible,
            "lambda_set": lambda_set_doc(report.lambda_set),
            "families": [family_doc(f) for f in report.families],
            "stats": _stats_doc(report.stats),
        }
    if isinstance(report, SuperRegion):
        doc = {"mode": "super-region"}
        if instance is not None:
            doc["instance"] = instance_doc(instance)
        doc["region"] = _super_region_doc(report)
        return doc
    doc = {"mode": "super-max"}
    if instance is not None:
        doc["instance"] = instance_doc(instance)
    doc.update({
        "feasible": True,
        "lambda_opt": fmt_rat(report.lambda_opt),
        "exact": report.exact,
        "bracket": _rats(report.bracket),
        "per_cell": [
            {"cell": list(o.cell_index), "value": fmt_rat(o.value), "exact": o.exact,
             "lo": fmt_rat(o.lo), "hi": fmt_rat(o.hi)}
            for o in report.per_cell
        ],
        "region": _super_region_doc(report.region),
        "warnings": list(report.warnings),
    })
    return doc


def infeasible_super_max_doc(instance: ProblemInstance, message: str) -> dict:
    return {
        "mode": "super-max",
        "instance": instance_doc(instance),
        "feasible": False,
        "lambda_opt": None,
        "message": message,
        "region": {"lambda": None, "pieces": []},
    }


def parse_report(doc: dict) -> Optional[Report]:
    """Inverse of :func:`report_doc`; an infeasible super-max document gives None."""
    mode = doc["mode"]
    if mode in ("eigen", "constrained"):
        inst, _ = parse_instance(doc["instance"])
        st = doc["stats"]
        return SolveReport(
            mode,
            inst,
            tuple(parse_family(f) for f in doc["families"]),
            parse_lambda_set(doc["lambda_set"]),
            SolveStats(st["cells_enumerated"], st["cells_nonempty"], st["singular_roots_checked"]),
            doc["feasible"],
        )
    if mode == "super-region":
        return _parse_super_region(doc["region"])
    if mode == "super-max":
        if not doc["feasible"]:
            return None
        return SuperMaxResult(
            Fraction(doc["lambda_opt"]),
            doc["exact"],
            tuple(_parse_rats(doc["bracket"])),
            tuple(
                CellOptimum(tuple(o["cell"]), Fraction(o["value"]), o["exact"], Fraction(o["lo"]), Fraction(o["hi"]))
                for o in doc["per_cell"]
            ),
            _parse_super_region(doc["region"]),
            tuple((p.cell_index, p.witness) for p in _parse_super_region(doc["region"]).pieces),
            tuple(doc.get("warnings", ())),
        )
    raise ValueError(f"unknown report mode {mode!r}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------- text

def _vec(xs) -> str:
    return "(" + ", ".join(fmt_rat(x) for x in xs) + ")"


def _ratfun_text(f: RatFun) -> str:
    if f.den.degree == 0:
        return f.num.pretty()
    return f"({f.num.pretty()}) / ({f.den.pretty()})"


def _row_text(r: Row, var: str) -> str:
    terms = []
    for k, c in enumerate(r.coeffs):
        if c == 0:
            continue
        name = f"{var}{k + 1}"
        mag = abs(c)
        body = name if mag == 1 else f"{fmt_rat(mag)}·{name}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    rel = {"<=": "≤", "<": "<", "=": "="}[r.rel]
    return f"{' '.join(terms) or '0'} {rel} {fmt_rat(r.rhs)}"


def _poly_lines(p: Polyhedron, var: str, indent: str) -> list[str]:
    return [indent + _row_text(r, var) for r in p.rows]


def _family_text(k: int, fam) -> list[str]:
    cell = tuple(fam.cell_index)
    if isinstance(fam, Curve):
        out = [f"family {k}: curve, cell {cell}, λ ∈ {' ∪ '.join(str(p) for p in fam.lambda_set.pieces)}"]
        out += [f"  x{j + 1}(λ) = {_ratfun_text(f)}" for j, f in enumerate(fam.coords)]
        return out
    tag = " (approximate)" if fam.approx else ""
    out = [f"family {k}: pencil, cell {cell}, λ = {fmt_endpoint(fam.lambda_star)}{tag}"]
    x = _vec(fam.base)
    for i, v in enumerate(fam.basis):
        x += f" + t{i + 1}·{_vec(v)}"
    out.append(f"  x = {x}")
    if fam.basis:
        out.append("  where")
        out += _poly_lines(fam.region, "t", "    ")
    return out


def _region_text(r: SuperRegion) -> list[str]:
    out = []
    for p in r.pieces:
        out.append(f"cell {tuple(p.cell_index)}: witness {_vec(p.witness)}")
        out += _poly_lines(p.polyhedron, "x", "    ")
    if not r.pieces:
        out.append("region is empty")
    return out


def render_text(report: Optional[Report], mode: str, instance: ProblemInstance) -> str:
    lines = [f"mode: {mode}", f"n = {instance.n}"]
    if isinstance(report, SolveReport):
        symbol = "Λ(A)" if report.mode == "eigen" else "Λ*(A)"
        if not report.feasible:
            lines.append("A⊙x ≥ b has no solution")
        else:
            s = report.stats
            lines.append(
                f"cells: {s.cells_enumerated} enumerated, {s.cells_nonempty} nonempty, "
                f"{s.singular_roots_checked} singular roots checked"
            )
        for k, fam in enumerate(report.families, 1):
            lines += _family_text(k, fam)
        body = " ∪ ".join(str(p) for p in report.lambda_set.pieces) or "∅"
        lines.append(f"{symbol} = {body}")
    elif isinstance(report, SuperRegion):
        lines.append(f"λ = {fmt_rat(report.lam)}")
        lines += _region_text(report)
    elif isinstance(report, SuperMaxResult):
        for o in report.per_cell:
            val = fmt_rat(o.value) if o.exact else f"[{fmt_rat(o.lo)}, {fmt_rat(o.hi)}]"
            lines.append(f"cell {tuple(o.cell_index)}: λ = {val}")
        lines += _region_text(report.region)
        lines += [f"warning: {w}" for w in report.warnings]
        if report.exact:
            lines.append(f"λ_max = {fmt_rat(report.lambda_opt)}")
        else:
            lines.append(f"λ_max ∈ [{fmt_rat(report.bracket[0])}, {fmt_rat(report.bracket[1])}]")
    else:
        lines.append("A⊙x ≥ b has no solution")
        lines.append("λ_max = none")
    return "\n".join(lines) + "\n"
