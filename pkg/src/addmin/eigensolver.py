"""Enumerate cells, solve each one, and assemble the report."""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .breakpoints import (
    BreakpointTable,
    ProblemInstance,
    compute_D_P,
    compute_Q_K,
    feasible_by_ones,
)
from .cells import cells_containing, iter_cells
from .exactnum import LambdaSet, compare, to_rat, union_lambda
from .paramsolve import Curve, EigenFamily, Pencil, solve_cell

#: cells above which a solve is refused unless forced
DEFAULT_MAX_CELLS = 10**7


class CellLimitError(RuntimeError):
    """The cell count exceeds the configured guard."""


@dataclass(frozen=True)
class SolveStats:
    cells_enumerated: int = 0
    cells_nonempty: int = 0
    singular_roots_checked: int = 0
    wall_time: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class SolveReport:
    mode: str
    instance: ProblemInstance
    families: tuple = ()
    lambda_set: LambdaSet = LambdaSet()
    stats: SolveStats = SolveStats()
    feasible: bool = True


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("ADDMIN_THREADS", "1")))
    except ValueError:
        return 1


def _solve_one(args):
    cell, n = args
    return solve_cell(cell, n)


def _run(inst: ProblemInstance, table: BreakpointTable, constrained: bool, mode: str,
         max_cells: int, force: bool) -> SolveReport:
    start = time.perf_counter()
    count = table.cell_count(constrained)
    if count > max_cells and not force:
        raise CellLimitError(
            f"{count} cells exceed the limit of {max_cells}; pass force to run anyway"
        )
    n = inst.n
    cells = iter_cells(inst, table, constrained)
    workers = _workers()
    if workers > 1 and count > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_solve_one, ((c, n) for c in cells), chunksize=16))
    else:
        results = [solve_cell(c, n) for c in cells]
    families = []
    nonempty = 0
    roots = 0
    for res in results:
        roots += res.singular_roots
        if res.families:
            nonempty += 1
            families.extend(res.families)
    lam = union_lambda(f.lambda_set for f in families)
    stats = SolveStats(count, nonempty, roots, time.perf_counter() - start)
    return SolveReport(mode, inst, tuple(families), lam, stats)


def solve_eigen(inst: ProblemInstance, max_cells: int = DEFAULT_MAX_CELLS, force: bool = False) -> SolveReport:
    """All eigenvalues and eigenvector families of ``inst.A`` (the demand vector is ignored)."""
    inst = inst.without_demand()
    return _run(inst, compute_Q_K(inst), False, "eigen", max_cells, force)


def solve_constrained(inst: ProblemInstance, max_cells: int = DEFAULT_MAX_CELLS, force: bool = False) -> SolveReport:
    """Eigenpairs that also satisfy ``A⊙x ≥ b``; empty report when the demand is infeasible."""
    if inst.b is None:
        raise ValueError("demand vector required")
    if not feasible_by_ones(inst):
        return SolveReport("constrained", inst, feasible=False)
    return _run(inst, compute_D_P(inst), True, "constrained", max_cells, force)


@dataclass(frozen=True)
class Membership:
    lam: Fraction
    family: EigenFamily
    family_id: int


def _in_family(fam: EigenFamily, lam: Fraction, x: Sequence[Fraction], tol: Optional[float]) -> bool:
    if isinstance(fam, Curve):
        if not fam.lambda_set.contains(lam):
            return False
        try:
            pt = fam.point(lam)
        except ZeroDivisionError:
            return False
        if tol is None:
            return tuple(pt) == tuple(x)
        return max(abs(float(a - b)) for a, b in zip(pt, x)) <= tol
    if tol is None:
        if fam.approx or compare(fam.lambda_star, lam) != 0:
            return False
    elif abs(float(fam.lambda_star) - float(lam)) > tol:
        return False
    t = _coords_in_pencil(fam, x)
    if t is None:
        return False
    if tol is None:
        return fam.point(t) == tuple(x) and fam.region.contains(t)
    pt = fam.point(t)
    if max(abs(float(a - b)) for a, b in zip(pt, x)) > tol:
        return False
    return _near_region(fam, t, tol)


def _coords_in_pencil(fam: Pencil, x: Sequence[Fraction]):
    """Least-squares parameters t with base + B t ≈ x (exact when x lies on the pencil)."""
    d = len(fam.basis)
    if d == 0:
        return ()
    r = [Fraction(xi) - bi for xi, bi in zip(x, fam.base)]
    # normal equations BᵀB t = Bᵀ r, solved exactly
    G = [[sum(u * v for u, v in zip(fam.basis[a], fam.basis[b])) for b in range(d)] for a in range(d)]
    h = [sum(u * v for u, v in zip(fam.basis[a], r)) for a in range(d)]
    for col in range(d):
        piv = next((i for i in range(col, d) if G[i][col] != 0), None)
        if piv is None:
            return None
        G[col], G[piv] = G[piv], G[col]
        h[col], h[piv] = h[piv], h[col]
        for i in range(d):
            if i != col and G[i][col] != 0:
                f = G[i][col] / G[col][col]
                G[i] = [a - f * b for a, b in zip(G[i], G[col])]
                h[i] -= f * h[col]
    return tuple(h[i] / G[i][i] for i in range(d))


def _near_region(fam: Pencil, t, tol: float) -> bool:
    # x ≠ θ is checked by the caller, so strict rows are relaxed like the others
    for row in fam.region.rows:
        lhs = sum(float(c) * float(v) for c, v in zip(row.coeffs, t))
        if row.rel == "=":
            if abs(lhs - float(row.rhs)) > tol:
                return False
        elif lhs > float(row.rhs) + tol:
            return False
    return True


def membership(inst: ProblemInstance, x: Sequence, mode: str = "eigen",
               report: Optional[SolveReport] = None, tol: Optional[float] = None) -> Optional[Membership]:
    """Find the family containing ``x`` (and its λ), or None.

    Only the cells whose boxes contain ``x`` are examined; when ``report`` is
    given its families are searched, otherwise those cells are solved on the
    spot.  ``tol=None`` means exact comparison.
    """
    x = tuple(to_rat(v) for v in x)
    if not any(x):
        return None
    if any(not 0 <= v <= 1 for v in x):
        return None
    constrained = mode == "constrained"
    if constrained:
        if inst.b is None or not feasible_by_ones(inst):
            return None
        table = compute_D_P(inst)
    else:
        inst = inst.without_demand()
        table = compute_Q_K(inst)
    for cell in cells_containing(inst, table, x, constrained):
        vals = cell.apply(x)
        i = max(range(inst.n), key=lambda k: x[k])
        lam = vals[i] / x[i]
        if tol is None:
            if any(v != lam * xi for v, xi in zip(vals, x)):
                continue
            if constrained and any(v < bi for v, bi in zip(vals, inst.b)):
                continue
        else:
            if max(abs(float(v - lam * xi)) for v, xi in zip(vals, x)) > tol:
                continue
        if report is not None:
            candidates = [(k, f) for k, f in enumerate(report.families) if f.cell_index == cell.index]
        else:
            candidates = list(enumerate(solve_cell(cell, inst.n).families))
        for k, fam in candidates:
            if _in_family(fam, lam, x, tol):
                return Membership(lam, fam, k)
    return None
