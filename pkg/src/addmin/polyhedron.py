"""Exact H-representation polyhedra and Fourier–Motzkin feasibility."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .exactnum import to_rat

MAX_FM_VARS = 12

RELATIONS = ("<=", "<", "=")


@dataclass(frozen=True)
class Row:
    """``coeffs · x  rel  rhs`` with ``rel`` one of ``<=``, ``<``, ``=``."""

    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")

    @classmethod
    def make(cls, coeffs, rel, rhs) -> "Row":
        """Build a row, accepting ``>=`` and ``>`` by negation."""
        cs = tuple(to_rat(c) for c in coeffs)
        rhs = to_rat(rhs)
        if rel in (">=", ">"):
            return cls(tuple(-c for c in cs), "<=" if rel == ">=" else "<", -rhs)
        return cls(cs, rel, rhs)

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((c * xi for c, xi in zip(self.coeffs, x)), Fraction(0))
        if self.rel == "<=":
            return lhs <= self.rhs
        if self.rel == "<":
            return lhs < self.rhs
        return lhs == self.rhs

    def negated(self) -> "Row":
        """The complement of an inequality row."""
        if self.rel == "=":
            raise ValueError("equality rows have no single-row complement")
        neg = tuple(-c for c in self.coeffs)
        return Row(neg, "<" if self.rel == "<=" else "<=", -self.rhs)


@dataclass(frozen=True)
class Polyhedron:
    nvars: int
    rows: tuple[Row, ...] = ()

    def __post_init__(self):
        for r in self.rows:
            if len(r.coeffs) != self.nvars:
                raise ValueError("row length does not match variable count")

    def with_rows(self, *rows: Row) -> "Polyhedron":
        return Polyhedron(self.nvars, self.rows + tuple(rows))

    def contains(self, x: Sequence[Fraction]) -> bool:
        return all(r.holds(x) for r in self.rows)

    def is_feasible(self) -> bool:
        return fm_feasible(self)[0]

    def simplified(self) -> "Polyhedron":
        """Drop rows implied by the others (exact, via Fourier–Motzkin)."""
        rows = list(_dedupe([_normalize(r) for r in self.rows]))
        i = 0
        while i < len(rows):
            r = rows[i]
            if r.rel != "=":
                rest = Polyhedron(self.nvars, tuple(rows[:i] + rows[i + 1:]))
                if not rest.with_rows(r.negated()).is_feasible():
                    rows.pop(i)
                    continue
            i += 1
        return Polyhedron(self.nvars, tuple(rows))


def _normalize(r: Row) -> Row:
    for c in r.coeffs:
        if c != 0:
            s = abs(c)
            return Row(tuple(a / s for a in r.coeffs), r.rel, r.rhs / s)
    return r


def _dedupe(rows: Sequence[Row]) -> list[Row]:
    """Keep the tightest of parallel inequality rows (rows must be normalized)."""
    best: dict = {}
    out: list[Row] = []
    for r in rows:
        if r.rel == "=":
            out.append(r)
            continue
        prev = best.get(r.coeffs)
        if prev is None or r.rhs < prev.rhs or (r.rhs == prev.rhs and r.rel == "<"):
            best[r.coeffs] = r
    return out + list(best.values())


def _trivial_ok(r: Row) -> bool:
    if r.rel == "<=":
        return 0 <= r.rhs
    if r.rel == "<":
        return 0 < r.rhs
    return r.rhs == 0


Chooser = Callable[[Optional[Fraction], bool, Optional[Fraction], bool], Fraction]


def midpoint_chooser(lo, lo_strict, hi, hi_strict) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1 if hi_strict else hi
    if hi is None:
        return lo + 1 if lo_strict else lo
    if lo == hi:
        return lo
    return (lo + hi) / 2


def random_chooser(rng: random.Random, steps: int = 1000) -> Chooser:
    def choose(lo, lo_strict, hi, hi_strict):
        if lo is None or hi is None or lo == hi:
            return midpoint_chooser(lo, lo_strict, hi, hi_strict)
        a = 1 if lo_strict else 0
        b = steps - 1 if hi_strict else steps
        return lo + (hi - lo) * Fraction(rng.randint(a, b), steps)

    return choose


def _solve(poly: Polyhedron, chooser: Chooser, max_vars: int = MAX_FM_VARS):
    n = poly.nvars
    if n > max_vars:
        raise ValueError(f"Fourier–Motzkin guard: {n} variables exceeds {max_vars}")
    rows = [_normalize(r) for r in poly.rows]
    stages = []

    # equalities: substitute a variable out
    while True:
        eq = next((r for r in rows if r.rel == "=" and any(r.coeffs)), None)
        if eq is None:
            break
        v = next(k for k, c in enumerate(eq.coeffs) if c != 0)
        a = eq.coeffs[v]
        stages.append(("eq", v, eq))
        new_rows = []
        for r in rows:
            if r is eq:
                continue
            f = r.coeffs[v] / a
            if f:
                r = Row(tuple(rc - f * ec for rc, ec in zip(r.coeffs, eq.coeffs)), r.rel, r.rhs - f * eq.rhs)
            new_rows.append(_normalize(r))
        rows = new_rows
    if not all(_trivial_ok(r) for r in rows if not any(r.coeffs)):
        return None
    rows = _dedupe([r for r in rows if any(r.coeffs)])

    substituted = {s[1] for s in stages}
    for v in range(n):
        if v in substituted:
            continue
        upper = [r for r in rows if r.coeffs[v] > 0]
        lower = [r for r in rows if r.coeffs[v] < 0]
        keep = [r for r in rows if r.coeffs[v] == 0]
        stages.append(("fm", v, upper + lower))
        for u in upper:
            for w in lower:
                cu, cw = u.coeffs[v], -w.coeffs[v]
                coeffs = tuple(cw * x + cu * y for x, y in zip(u.coeffs, w.coeffs))
                rel = "<" if "<" in (u.rel, w.rel) else "<="
                r = _normalize(Row(coeffs, rel, cw * u.rhs + cu * w.rhs))
                if not any(r.coeffs):
                    if not _trivial_ok(r):
                        return None
                    continue
                keep.append(r)
        rows = _dedupe(keep)

    x: list[Fraction] = [Fraction(0)] * n
    for kind, v, data in reversed(stages):
        if kind == "eq":
            s = data.rhs - sum((c * x[k] for k, c in enumerate(data.coeffs) if k != v), Fraction(0))
            x[v] = s / data.coeffs[v]
            continue
        lo = hi = None
        lo_s = hi_s = False
        for r in data:
            s = r.rhs - sum((c * x[k] for k, c in enumerate(r.coeffs) if k != v), Fraction(0))
            bound = s / r.coeffs[v]
            strict = r.rel == "<"
            if r.coeffs[v] > 0:
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_s = bound, strict
            else:
                if lo is None or bound > lo or (bound == lo and strict):
                    lo, lo_s = bound, strict
        x[v] = chooser(lo, lo_s, hi, hi_s)
    return tuple(x)


def fm_feasible(poly: Polyhedron, max_vars: int = MAX_FM_VARS) -> tuple[bool, Optional[tuple[Fraction, ...]]]:
    """Decide non-emptiness exactly; return a witness built from interval midpoints.

    >>> box = Polyhedron(1, (Row.make([1], ">=", 0), Row.make([1], "<=", 1)))
    >>> fm_feasible(box)
    (True, (Fraction(1, 2),))
    """
    w = _solve(poly, midpoint_chooser, max_vars)
    if w is None:
        return False, None
    assert poly.contains(w), "Fourier–Motzkin witness violates a row"
    return True, w


def fm_sample(poly: Polyhedron, rng: random.Random, max_vars: int = MAX_FM_VARS) -> Optional[tuple[Fraction, ...]]:
    """A pseudo-random exact point of ``poly`` (None when empty)."""
    w = _solve(poly, random_chooser(rng), max_vars)
    if w is not None:
        assert poly.contains(w)
    return w


def box_rows(bounds: Sequence[tuple[Fraction, Fraction]]) -> list[Row]:
    n = len(bounds)
    rows = []
    for j, (lo, hi) in enumerate(bounds):
        e = [0] * n
        e[j] = 1
        if lo == hi:
            rows.append(Row.make(e, "=", lo))
        else:
            rows.append(Row.make(e, ">=", lo))
            rows.append(Row.make(e, "<=", hi))
    return rows
