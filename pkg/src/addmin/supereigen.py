"""Supereigenvectors (A⊙x ≥ λx) and the maximum constrained supereigenvalue.

For fixed λ each cell turns ``A⊙x ≥ λx`` into linear inequalities in x, so
non-emptiness is an exact Fourier–Motzkin question.  Because x ≥ 0, the
feasible λ of a cell form an interval starting at 0; its supremum is found by
bisection, snapped to the simplest rational in the final bracket, and then
proved optimal exactly (feasible there, and no feasible point has slack to
push λ any higher).
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .breakpoints import InfeasibleError, ProblemInstance, compute_D_P, compute_Q_K, feasible_by_ones
from .cells import CellSystem, iter_cells
from .exactnum import simplest_between, to_rat
from .polyhedron import MAX_FM_VARS, Polyhedron, Row, box_rows, fm_feasible

BISECTION_WIDTH = Fraction(1, 10**9)
MAX_RECONSTRUCT_DEN = 10**6

__all__ = [
    "SuperPiece", "SuperRegion", "CellOptimum", "SuperMaxResult",
    "cell_polyhedron", "super_region", "super_max", "fm_feasible",
]


@dataclass(frozen=True)
class SuperPiece:
    cell_index: tuple[int, ...]
    polyhedron: Polyhedron
    witness: tuple[Fraction, ...]


@dataclass(frozen=True)
class SuperRegion:
    lam: Fraction
    pieces: tuple[SuperPiece, ...] = ()

    def contains(self, x: Sequence) -> bool:
        x = tuple(to_rat(v) for v in x)
        return any(p.polyhedron.contains(x) for p in self.pieces)

    def is_empty(self) -> bool:
        return not self.pieces


@dataclass(frozen=True)
class CellOptimum:
    """λ(p) for one cell: exact ``value`` or a bracket ``[lo, hi]`` when unresolved."""

    cell_index: tuple[int, ...]
    value: Fraction
    exact: bool
    lo: Fraction
    hi: Fraction


@dataclass(frozen=True)
class SuperMaxResult:
    lambda_opt: Fraction
    exact: bool
    bracket: tuple[Fraction, Fraction]
    per_cell: tuple[CellOptimum, ...]
    region: SuperRegion
    witnesses: tuple[tuple[tuple[int, ...], tuple[Fraction, ...]], ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)


def cell_polyhedron(cell: CellSystem, lam: Fraction, strict_super: Optional[Sequence[bool]] = None) -> Polyhedron:
    """``{x in box : Δx + c ≥ λx, Δx + c ≥ b}`` over all n coordinates, θ excluded.

    ``strict_super`` optionally makes individual ``≥ λx`` rows strict.
    """
    n = cell.n
    rows = box_rows(cell.box)
    for i in range(n):
        coeffs = [Fraction(cell.delta[i][j]) for j in range(n)]
        coeffs[i] -= lam
        rel = ">" if strict_super is not None and strict_super[i] else ">="
        rows.append(Row.make(coeffs, rel, -cell.c[i]))
        if cell.demand is not None:
            rows.append(Row.make(cell.delta[i], ">=", cell.demand[i] - cell.c[i]))
    if not cell.fixed:
        rows.append(Row.make([1] * n, ">", 0))
    # constant rows are decided now so the polyhedron stays tidy
    kept = []
    for r in rows:
        if not any(r.coeffs):
            if not r.holds([0] * n):
                return Polyhedron(n, (Row((Fraction(0),) * n, "<", Fraction(0)),))
            continue
        kept.append(r)
    return Polyhedron(n, tuple(kept))


def _diag_warning(inst: ProblemInstance) -> list[str]:
    if any(inst.A[i][i] != 0 for i in range(inst.n)):
        msg = "matrix has a nonzero diagonal entry; the supereigenvalue range (0, n-1] assumes a zero diagonal"
        warnings.warn(msg, stacklevel=3)
        return [msg]
    return []


def super_region(inst: ProblemInstance, lam) -> SuperRegion:
    """Per-cell polyhedra of supereigenvectors at ``lam`` (with demand rows when ``inst.b`` is set)."""
    lam = to_rat(lam)
    if not 0 <= lam <= inst.n:
        raise ValueError(f"λ = {lam} outside [0, {inst.n}]")
    _diag_warning(inst)
    table = compute_Q_K(inst)
    pieces = []
    for cell in iter_cells(inst, table):
        if inst.b is not None:
            cell = CellSystem(cell.index, cell.delta, cell.c, cell.box, cell.fixed, inst.b)
        poly = cell_polyhedron(cell, lam)
        ok, w = fm_feasible(poly)
        if ok:
            pieces.append(SuperPiece(cell.index, poly.simplified(), w))
    return SuperRegion(lam, tuple(pieces))


def _feasible(cell: CellSystem, lam: Fraction) -> bool:
    return fm_feasible(cell_polyhedron(cell, lam))[0]


def _improvable(cell: CellSystem, lam: Fraction) -> bool:
    """Does some feasible x admit a λ' > lam?

    That happens iff some x satisfies every super row strictly wherever
    x_i > 0; coordinates that may vanish are branched on.
    """
    n = cell.n
    may_vanish = [j for j in range(n) if cell.box[j][0] == 0]
    for zero in itertools.chain.from_iterable(
        itertools.combinations(may_vanish, r) for r in range(len(may_vanish) + 1)
    ):
        zs = set(zero)
        if len(zs) == n:
            continue
        strict = [i not in zs for i in range(n)]
        poly = cell_polyhedron(cell, lam, strict)
        extra = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            if j in zs:
                extra.append(Row.make(e, "=", 0))
            elif j in may_vanish:
                extra.append(Row.make(e, ">", 0))
        if fm_feasible(poly.with_rows(*extra))[0]:
            return True
    return False


def _cell_optimum(cell: CellSystem, n: int) -> Optional[CellOptimum]:
    if not _feasible(cell, Fraction(0)):
        return None
    lo, hi = Fraction(0), Fraction(n)
    if _feasible(cell, hi):
        return CellOptimum(cell.index, hi, True, hi, hi)
    while hi - lo > BISECTION_WIDTH:
        mid = (lo + hi) / 2
        if _feasible(cell, mid):
            lo = mid
        else:
            hi = mid
    cand = simplest_between(lo, hi)
    if cand.denominator <= MAX_RECONSTRUCT_DEN and _feasible(cell, cand) and not _improvable(cell, cand):
        return CellOptimum(cell.index, cand, True, cand, cand)
    return CellOptimum(cell.index, lo, False, lo, hi)


def super_max(inst: ProblemInstance) -> SuperMaxResult:
    """Maximum constrained supereigenvalue and its region of supereigenvectors."""
    if inst.b is None:
        raise ValueError("demand vector required")
    if not feasible_by_ones(inst):
        raise InfeasibleError("λ doesn't exist: A⊙x ≥ b has no solution, region is empty")
    notes = _diag_warning(inst)
    table = compute_D_P(inst)
    cells = list(iter_cells(inst, table, constrained=True))
    if len(cells[0].free) > MAX_FM_VARS:
        raise ValueError(f"more than {MAX_FM_VARS} free coordinates")
    per_cell = []
    for cell in cells:
        opt = _cell_optimum(cell, inst.n)
        if opt is not None:
            per_cell.append(opt)
    best = max(per_cell, key=lambda o: (o.value, o.exact))
    lam = best.value
    pieces = []
    witnesses = []
    for cell in cells:
        poly = cell_polyhedron(cell, lam)
        ok, w = fm_feasible(poly)
        if ok:
            pieces.append(SuperPiece(cell.index, poly.simplified(), w))
            witnesses.append((cell.index, w))
    return SuperMaxResult(
        lambda_opt=lam,
        exact=best.exact,
        bracket=(best.lo, best.hi),
        per_cell=tuple(per_cell),
        region=SuperRegion(lam, tuple(pieces)),
        witnesses=tuple(witnesses),
        warnings=tuple(notes),
    )
