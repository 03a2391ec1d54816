"""Parametric solution of one cell system in λ.

For the free coordinates F of a cell the eigen equation reads
``(λI − Δ_FF) x_F = c_F`` (plus, for coordinates pinned to 1, the extra rows
``Δ_iF x_F + c_i = λ``).  Away from the roots of ``D(λ) = det(λI − Δ_FF)``
the solution is unique and given by Cramer's rule, which yields a
:class:`Curve`.  At each root of ``D`` the system is solved directly and any
surviving affine set becomes a :class:`Pencil`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath

from .cells import CellSystem
from .exactnum import (
    AlgebraicNumber,
    LambdaSet,
    Piece,
    Poly,
    RatFun,
    is_exact,
    is_root_of,
    isolate_real_roots,
    poly_gcd,
    refine_endpoints,
    restrict,
)
from .polyhedron import Polyhedron, Row, fm_feasible, fm_sample

#: residual threshold for consistency at irrational singular λ
SINGULAR_RESIDUAL_TOL = 1e-9
_MP_DPS = 50


@dataclass(frozen=True)
class Curve:
    """Eigenvectors ``x(λ)`` given by rational functions on ``lambda_set``."""

    cell_index: tuple[int, ...]
    lambda_set: LambdaSet
    coords: tuple[RatFun, ...]
    kind = "curve"

    @property
    def approx(self) -> bool:
        return not self.lambda_set.exact

    def point(self, lam: Fraction) -> tuple[Fraction, ...]:
        return tuple(f(lam) for f in self.coords)


@dataclass(frozen=True)
class Pencil:
    """Eigenvectors at a single λ: ``x = base + Σ t_k basis[k]`` with ``t`` in ``region``.

    ``approx`` pencils sit at an irrational λ; their base and basis are
    rational approximations good to far below the detection tolerance.
    """

    cell_index: tuple[int, ...]
    lambda_star: Union[Fraction, AlgebraicNumber]
    base: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    region: Polyhedron
    approx: bool = False
    kind = "pencil"

    def point(self, t: Sequence[Fraction]) -> tuple[Fraction, ...]:
        x = list(self.base)
        for tk, vec in zip(t, self.basis):
            for j, v in enumerate(vec):
                x[j] += tk * v
        return tuple(x)

    @property
    def lambda_set(self) -> LambdaSet:
        return LambdaSet.point(self.lambda_star)


EigenFamily = Union[Curve, Pencil]


@dataclass
class CellResult:
    families: list
    singular_roots: int = 0


def lambda_domain(n: int) -> Piece:
    return Piece(Fraction(0), Fraction(n))


def _bareiss_det(M: list[list[Poly]]) -> Poly:
    n = len(M)
    if n == 0:
        return Poly.const(1)
    M = [row[:] for row in M]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if M[k][k].is_zero:
            swap = next((r for r in range(k + 1, n) if not M[r][k].is_zero), None)
            if swap is None:
                return Poly()
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def char_and_cramer(cell: CellSystem) -> tuple[Optional[Poly], list[Poly]]:
    """``D = det(λI − Δ_FF)`` and Cramer numerators ``N_j`` over free coordinates F.

    Returns ``(None, [])`` for a cell without free coordinates.
    """
    F = cell.free
    if not F:
        return None, []
    lam = Poly.lam()
    M = [[(lam if i == j else Poly()) - cell.delta[i][j] for j in F] for i in F]
    D = _bareiss_det(M)
    rhs = [Poly.const(cell.c[i]) for i in F]
    N = []
    for col in range(len(F)):
        Mj = [row[:col] + [rhs[r]] + row[col + 1:] for r, row in enumerate(M)]
        N.append(_bareiss_det(Mj))
    return D, N


def generic_families(cell: CellSystem, D: Poly, N: Sequence[Poly], n: Optional[int] = None) -> list[Curve]:
    """The Cramer curve of ``cell`` restricted to its box, demands and λ ∈ [0, n]."""
    n = cell.n if n is None else n
    F = cell.free
    theta_gcd = None
    if not cell.fixed:
        nonzero = [Nj for Nj in N if not Nj.is_zero]
        if not nonzero:
            return []
        theta_gcd = nonzero[0]
        for Nj in nonzero[1:]:
            theta_gcd = poly_gcd(theta_gcd, Nj)
    coords_by_free = {j: RatFun(Nj, D) for j, Nj in zip(F, N)}
    # (f, relation, bound) rows, box rows first since they prune hardest
    checks = []
    for j in F:
        lo, hi = cell.box[j]
        checks.append((coords_by_free[j], ">=", lo))
        checks.append((coords_by_free[j], "<=", hi))
    # row i evaluated on the curve is (Σ_F Δ_ij N_j + c_i D) / D
    row_num = {}
    for i in range(cell.n):
        num = D * cell.c[i]
        for j, Nj in zip(F, N):
            if cell.delta[i][j]:
                num = num + Nj
        row_num[i] = num
    for i in cell.fixed:
        checks.append((RatFun(row_num[i] - D * Poly.lam(), D), "=", 0))
    if cell.demand is not None:
        for i in range(cell.n):
            checks.append((RatFun(row_num[i], D), ">=", cell.demand[i]))
    checks.append((RatFun(D), "!=", 0))
    if theta_gcd is not None:
        checks.append((RatFun(theta_gcd), "!=", 0))
    lam_set = LambdaSet.from_pieces([lambda_domain(n)])
    for f, rel, bound in checks:
        lam_set = restrict(lam_set, f, rel, bound)
        if lam_set.is_empty():
            return []
    one = RatFun(Poly.const(1))
    coords = tuple(coords_by_free.get(j, one) for j in range(cell.n))
    return [Curve(cell.index, refine_endpoints(lam_set), coords)]


def _nullspace_exact(rows: list[list[Fraction]], rhs: list[Fraction], m: int):
    """Solve ``rows · y = rhs`` exactly; return (particular, basis) or None if inconsistent."""
    R = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, len(R)) if R[i][col] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][col]
        R[r] = [v * inv for v in R[r]]
        for i in range(len(R)):
            if i != r and R[i][col] != 0:
                f = R[i][col]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(col)
        r += 1
        if r == len(R):
            break
    for i in range(r, len(R)):
        if R[i][m] != 0:
            return None
    part = [Fraction(0)] * m
    for i, col in enumerate(pivots):
        part[col] = R[i][m]
    basis = []
    for fcol in (c for c in range(m) if c not in pivots):
        v = [Fraction(0)] * m
        v[fcol] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -R[i][fcol]
        basis.append(v)
    return part, basis


def _mpf(r: Fraction):
    return mpmath.mpf(r.numerator) / r.denominator


def _nullspace_numeric(rows, rhs, m: int):
    """High-precision least squares at an approximate λ; None when the residual is too large."""
    with mpmath.workdps(_MP_DPS):
        M = mpmath.matrix([[_mpf(v) for v in r] for r in rows])
        b = mpmath.matrix([_mpf(v) for v in rhs])
        U, S, V = mpmath.svd_r(M)
        scale = max([abs(s) for s in S] + [mpmath.mpf(1)])
        thresh = scale * mpmath.mpf(10) ** (-20)
        rank = sum(1 for s in S if abs(s) > thresh)
        x = mpmath.matrix(m, 1)
        for k in range(rank):
            coef = sum(U[i, k] * b[i] for i in range(M.rows)) / S[k]
            for j in range(m):
                x[j] += coef * V[k, j]
        resid = M * x - b
        if max([abs(v) for v in resid] + [mpmath.mpf(0)]) > SINGULAR_RESIDUAL_TOL:
            return None
        part = [_mpf_to_fraction(x[j]) for j in range(m)]
        basis = []
        for k in range(rank, m):
            vec = [V[k, j] for j in range(m)]
            big = max(vec, key=abs)
            basis.append([_mpf_to_fraction(v / big) for v in vec])
        return part, basis


def _mpf_to_fraction(v) -> Fraction:
    man, exp = mpmath.mpf(v).man_exp
    f = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return f.limit_denominator(10**16)


def _pencil_at(cell: CellSystem, lam_star, lam_value: Fraction, exact: bool, n: int) -> Optional[Pencil]:
    """Solve the cell at a fixed λ and wrap any non-empty, non-zero solution set."""
    F = cell.free
    m = len(F)
    rows, rhs = [], []
    for i in F:
        rows.append([(lam_value if i == j else 0) - cell.delta[i][j] for j in F])
        rhs.append(cell.c[i])
    for i in sorted(cell.fixed):
        rows.append([Fraction(cell.delta[i][j]) for j in F])
        rhs.append(lam_value - cell.c[i])
    if exact:
        sol = _nullspace_exact([[Fraction(v) for v in r] for r in rows], rhs, m)
    else:
        sol = _nullspace_numeric([[Fraction(v) for v in r] for r in rows], rhs, m)
    if sol is None:
        return None
    part, basis = sol
    # lift to all n coordinates; pinned coordinates are 1
    base = [Fraction(1) if j in cell.fixed else Fraction(0) for j in range(cell.n)]
    for pos, j in enumerate(F):
        base[j] = part[pos]
    full_basis = []
    for vec in basis:
        v = [Fraction(0)] * cell.n
        for pos, j in enumerate(F):
            v[j] = vec[pos]
        full_basis.append(tuple(v))
    d = len(full_basis)
    region_rows = []

    def affine_row(weights: Sequence[Fraction]):
        # weights · x = const + coeffs · t
        const = sum((w * b for w, b in zip(weights, base)), Fraction(0))
        coeffs = [sum((w * v[j] for j, w in enumerate(weights)), Fraction(0)) for v in full_basis]
        return const, coeffs

    for j in F:
        e = [Fraction(int(k == j)) for k in range(cell.n)]
        const, coeffs = affine_row(e)
        lo, hi = cell.box[j]
        region_rows.append(Row.make(coeffs, ">=", lo - const))
        region_rows.append(Row.make(coeffs, "<=", hi - const))
    if cell.demand is not None:
        for i in range(cell.n):
            const, coeffs = affine_row([Fraction(v) for v in cell.delta[i]])
            region_rows.append(Row.make(coeffs, ">=", cell.demand[i] - cell.c[i] - const))
    if not cell.fixed:
        const, coeffs = affine_row([Fraction(int(j in F)) for j in range(cell.n)])
        region_rows.append(Row.make(coeffs, ">", -const))
    # drop constant rows after checking them
    kept = []
    for r in region_rows:
        if not any(r.coeffs):
            if not r.holds([0] * d):
                return None
            continue
        kept.append(r)
    region = Polyhedron(d, tuple(kept))
    if not fm_feasible(region)[0]:
        return None
    region = region.simplified()
    return Pencil(cell.index, lam_star, tuple(base), tuple(full_basis), region, approx=not exact)


def singular_families(cell: CellSystem, D: Optional[Poly], N: Sequence[Poly] = (), n: Optional[int] = None) -> tuple[list[Pencil], int]:
    """Pencils at the roots of ``D`` in [0, n]; also returns the number of roots checked.

    A cell with no free coordinates has ``D = None`` and is handled here: it is
    an eigenvector exactly when every row value ``c_i`` agrees.
    """
    n = cell.n if n is None else n
    if D is None:
        vals = set(cell.c)
        if len(vals) != 1:
            return [], 0
        lam = vals.pop()
        if not 0 <= lam <= n:
            return [], 0
        if cell.demand is not None and any(ci < bi for ci, bi in zip(cell.c, cell.demand)):
            return [], 0
        return [Pencil(cell.index, lam, tuple(Fraction(1) for _ in range(cell.n)), (), Polyhedron(0), False)], 0
    out = []
    roots = isolate_real_roots(D, 0, n)
    if N:
        common = D
        for Nj in N:
            common = poly_gcd(common, Nj)
    sqf_simple = poly_gcd(D, D.derivative())
    for r in roots:
        if isinstance(r, AlgebraicNumber):
            # at a simple root the adjugate has rank one, so consistency forces N(λ*) = 0
            simple = not is_root_of(sqf_simple, r)
            if simple and N and not is_root_of(common, r):
                continue
            fam = _pencil_at(cell, r, r.refined(Fraction(1, 10**40)).midpoint, False, n)
        else:
            fam = _pencil_at(cell, r, r, True, n)
        if fam is not None:
            out.append(fam)
    return out, len(roots)


def solve_cell(cell: CellSystem, n: Optional[int] = None) -> CellResult:
    """Every eigen family of one cell: the generic curve first, then pencils by λ."""
    n = cell.n if n is None else n
    D, N = char_and_cramer(cell)
    fams: list = []
    if D is not None:
        fams.extend(generic_families(cell, D, N, n))
    pencils, checked = singular_families(cell, D, N, n)
    fams.extend(pencils)
    return CellResult(fams, checked)


@dataclass(frozen=True)
class Sample:
    lam: Union[Fraction, AlgebraicNumber]
    x: tuple[Fraction, ...]
    approx: bool = False


def _rational_points(piece: Piece, rng: random.Random, count: int) -> list[Fraction]:
    if piece.is_point:
        return [piece.lo] if is_exact(piece.lo) else []
    # rational bounds inside the piece
    lo = piece.lo if is_exact(piece.lo) else piece.lo.refined(Fraction(1, 10**15)).hi
    hi = piece.hi if is_exact(piece.hi) else piece.hi.refined(Fraction(1, 10**15)).lo
    pts = []
    if piece.lo_closed and is_exact(piece.lo):
        pts.append(lo)
    if piece.hi_closed and is_exact(piece.hi):
        pts.append(hi)
    while len(pts) < count:
        t = Fraction(rng.randint(1, 9999), 10000)
        pts.append(lo + (hi - lo) * t)
    return pts[:count]


def family_sample(fam: EigenFamily, count: int, seed: int = 0) -> list[Sample]:
    """Deterministic exact points of a family (pencils at irrational λ are tagged approx)."""
    rng = random.Random(seed)
    if isinstance(fam, Curve):
        pieces = fam.lambda_set.pieces
        if not pieces:
            raise ValueError("family is empty")
        out = []
        per = max(1, -(-count // len(pieces)))
        for p in pieces:
            for lam in _rational_points(p, rng, per):
                out.append(Sample(lam, fam.point(lam)))
        if not out:
            raise ValueError("family has no rational λ to sample")
        return out[:count]
    out = []
    for _ in range(count):
        t = fm_sample(fam.region, rng)
        if t is None:
            raise ValueError("family is empty")
        out.append(Sample(fam.lambda_star, fam.point(t), fam.approx))
    return out
