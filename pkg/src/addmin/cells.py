"""Linear cell systems.

On each breakpoint cell every ``min(a_ij, x_j)`` is affine, either ``x_j``
(selector 1) or the constant ``a_ij`` (selector 0), so ``A⊙x = Δx + c``
throughout the cell box.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .breakpoints import BreakpointTable, InfeasibleError, ProblemInstance, feasible_by_ones


@dataclass(frozen=True)
class CellSystem:
    index: tuple[int, ...]
    delta: tuple[tuple[int, ...], ...]
    c: tuple[Fraction, ...]
    box: tuple[tuple[Fraction, Fraction], ...]
    fixed: frozenset = frozenset()
    demand: Optional[tuple[Fraction, ...]] = None

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def free(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if j not in self.fixed)

    def apply(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """``Δx + c``."""
        return tuple(
            sum((x[j] for j in range(self.n) if row[j]), Fraction(0)) + ci
            for row, ci in zip(self.delta, self.c)
        )

    def in_box(self, x: Sequence[Fraction]) -> bool:
        return all(lo <= xj <= hi for xj, (lo, hi) in zip(x, self.box))


def _selectors(inst: ProblemInstance, bounds: Sequence[tuple[Fraction, Fraction]], fixed=frozenset()):
    n = inst.n
    delta = []
    c = []
    for i in range(n):
        row = []
        ci = Fraction(0)
        for j in range(n):
            a = inst.A[i][j]
            if j in fixed:
                row.append(0)
                ci += a
            elif a >= bounds[j][1]:
                row.append(1)
            else:
                # a <= lower bound, since every column value is a breakpoint or below it
                row.append(0)
                ci += a
        delta.append(tuple(row))
        c.append(ci)
    return tuple(delta), tuple(c)


def build_cell_eigen(inst: ProblemInstance, table: BreakpointTable, k: Sequence[int]) -> CellSystem:
    k = tuple(k)
    if len(k) != inst.n:
        raise IndexError(f"cell index {k} has wrong length")
    box = []
    for j, kj in enumerate(k):
        if kj not in table.K[j]:
            raise IndexError(f"k[{j}] = {kj} outside K_{j + 1} = {table.K[j]}")
        box.append((table.Q[j][kj - 1], table.Q[j][kj]))
    delta, c = _selectors(inst, box)
    return CellSystem(k, delta, c, tuple(box))


def build_cell_constrained(inst: ProblemInstance, table: BreakpointTable, p: Sequence[int]) -> CellSystem:
    if not feasible_by_ones(inst):
        raise InfeasibleError("A⊙x ≥ b has no solution")
    if not table.constrained:
        raise ValueError("breakpoint table lacks the constrained part")
    p = tuple(p)
    if len(p) != inst.n:
        raise IndexError(f"cell index {p} has wrong length")
    box = []
    for j, pj in enumerate(p):
        if pj not in table.P[j]:
            raise IndexError(f"p[{j}] = {pj} outside P_{j + 1} = {table.P[j]}")
        if j in table.n_star:
            box.append((Fraction(1), Fraction(1)))
        else:
            box.append((table.D[j][pj - 1], table.D[j][pj]))
    delta, c = _selectors(inst, box, table.n_star)
    return CellSystem(p, delta, c, tuple(box), table.n_star, inst.b)


def iter_cell_indices(table: BreakpointTable, constrained: bool = False) -> Iterator[tuple[int, ...]]:
    """Cell multi-indices in lexicographic order."""
    return itertools.product(*(table.P if constrained else table.K))


def iter_cells(inst: ProblemInstance, table: BreakpointTable, constrained: bool = False) -> Iterator[CellSystem]:
    build = build_cell_constrained if constrained else build_cell_eigen
    for idx in iter_cell_indices(table, constrained):
        yield build(inst, table, idx)


def cells_containing(inst: ProblemInstance, table: BreakpointTable, x: Sequence[Fraction],
                     constrained: bool = False) -> list[CellSystem]:
    """Every cell whose (closed) box contains ``x``."""
    choices = []
    for j, xj in enumerate(x):
        if constrained:
            if j in table.n_star:
                choices.append([0] if xj == 1 else [])
                continue
            bps = table.D[j]
            idx = table.P[j]
        else:
            bps = table.Q[j]
            idx = table.K[j]
        choices.append([kk for kk in idx if bps[kk - 1] <= xj <= bps[kk]])
    build = build_cell_constrained if constrained else build_cell_eigen
    return [build(inst, table, k) for k in itertools.product(*choices)]


def addmin_apply(inst: ProblemInstance, x: Sequence) -> tuple:
    """``A⊙x``: row i is ``Σ_j min(a_ij, x_j)``."""
    if len(x) != inst.n:
        raise ValueError(f"x must have {inst.n} entries")
    if any(not 0 <= xj <= 1 for xj in x):
        raise ValueError("x must lie in [0, 1]^n")
    return tuple(sum(min(a, xj) for a, xj in zip(row, x)) for row in inst.A)
