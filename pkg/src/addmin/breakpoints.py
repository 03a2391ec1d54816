"""Problem instances and the per-column breakpoint tables.

Columns are indexed from 0.  Cell indices keep the 1-based numbering of the
breakpoint intervals (``k_j = 1`` is the interval ``[q_0j, q_1j]``), and
``p_j = 0`` marks a column pinned to 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import to_rat


class InstanceError(ValueError):
    """Invalid instance data; ``field`` names the offending entry, e.g. ``A[1][0]``."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class InfeasibleError(ValueError):
    """The demand system A⊙x ≥ b has no solution."""


@dataclass(frozen=True)
class ProblemInstance:
    A: tuple[tuple[Fraction, ...], ...]
    b: Optional[tuple[Fraction, ...]] = None

    @property
    def n(self) -> int:
        return len(self.A)

    @classmethod
    def from_values(cls, A: Sequence[Sequence], b: Optional[Sequence] = None) -> "ProblemInstance":
        """Parse and validate; entries may be decimal strings, ints or Fractions."""
        n = len(A)
        if n == 0:
            raise InstanceError("A", "matrix must be non-empty")
        rows = []
        for i, row in enumerate(A):
            if not isinstance(row, (list, tuple)) or len(row) != n:
                raise InstanceError(f"A[{i}]", f"row must have {n} entries")
            parsed = []
            for j, v in enumerate(row):
                name = f"A[{i}][{j}]"
                try:
                    r = to_rat(v)
                except (TypeError, ValueError, ZeroDivisionError):
                    raise InstanceError(name, f"not a number: {v!r}") from None
                if not 0 <= r <= 1:
                    raise InstanceError(name, f"value {v} outside [0, 1]")
                parsed.append(r)
            rows.append(tuple(parsed))
        bb = None
        if b is not None:
            if not isinstance(b, (list, tuple)) or len(b) != n:
                raise InstanceError("b", f"demand vector must have {n} entries")
            bb = []
            for i, v in enumerate(b):
                name = f"b[{i}]"
                try:
                    r = to_rat(v)
                except (TypeError, ValueError, ZeroDivisionError):
                    raise InstanceError(name, f"not a number: {v!r}") from None
                if not 0 < r <= n:
                    raise InstanceError(name, f"value {v} outside (0, {n}]")
                bb.append(r)
            bb = tuple(bb)
        return cls(tuple(rows), bb)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.A)

    def without_demand(self) -> "ProblemInstance":
        return replace(self, b=None)


@dataclass(frozen=True)
class BreakpointTable:
    """Breakpoints per column.

    ``Q[j]`` runs from 0 to 1 through the interior column values; ``K[j]`` is
    ``(1, …, t_j + 1)``.  The constrained part (``D``, ``P``, ``alpha_check``,
    ``n_star``) is filled in by :func:`compute_D_P` only.
    """

    Q: tuple[tuple[Fraction, ...], ...]
    K: tuple[tuple[int, ...], ...]
    alpha_check: Optional[tuple[Fraction, ...]] = None
    D: Optional[tuple[tuple[Fraction, ...], ...]] = None
    P: Optional[tuple[tuple[int, ...], ...]] = None
    n_star: frozenset = field(default_factory=frozenset)

    @property
    def t(self) -> tuple[int, ...]:
        return tuple(len(q) - 2 for q in self.Q)

    @property
    def constrained(self) -> bool:
        return self.P is not None

    def cell_count(self, constrained: bool = False) -> int:
        idx = self.P if constrained else self.K
        if idx is None:
            raise ValueError("constrained breakpoints not computed")
        return math.prod(len(k) for k in idx)


def compute_Q_K(inst: ProblemInstance) -> BreakpointTable:
    Q, K = [], []
    for j in range(inst.n):
        interior = sorted({a for a in inst.column(j) if 0 < a < 1})
        Q.append((Fraction(0), *interior, Fraction(1)))
        K.append(tuple(range(1, len(interior) + 2)))
    return BreakpointTable(tuple(Q), tuple(K))


def _require_b(inst: ProblemInstance) -> tuple[Fraction, ...]:
    if inst.b is None:
        raise ValueError("demand vector required")
    return inst.b


def feasible_by_ones(inst: ProblemInstance) -> bool:
    """A⊙x ≥ b is solvable iff x = (1, …, 1) solves it, i.e. every row sum reaches b_i."""
    b = _require_b(inst)
    return all(sum(row) >= bi for row, bi in zip(inst.A, b))


def compute_alpha_check(inst: ProblemInstance) -> tuple[Fraction, ...]:
    """Componentwise lower bound shared by every solution of A⊙x ≥ b."""
    b = _require_b(inst)
    sums = [sum(row) for row in inst.A]
    out = []
    for j in range(inst.n):
        out.append(max([Fraction(0)] + [b[i] - (sums[i] - inst.A[i][j]) for i in range(inst.n)]))
    return tuple(out)


def compute_D_P(inst: ProblemInstance) -> BreakpointTable:
    if not feasible_by_ones(inst):
        raise InfeasibleError("A⊙x ≥ b has no solution: (1, …, 1) violates it")
    table = compute_Q_K(inst)
    alpha = compute_alpha_check(inst)
    D, P = [], []
    n_star = set()
    for j in range(inst.n):
        aj = alpha[j]
        if aj == 1:
            n_star.add(j)
            D.append((Fraction(1),))
            P.append((0,))
            continue
        above = sorted({a for a in inst.column(j) if aj < a < 1})
        D.append((aj, *above, Fraction(1)))
        P.append(tuple(range(1, len(above) + 2)))
    return replace(table, alpha_check=alpha, D=tuple(D), P=tuple(P), n_star=frozenset(n_star))
