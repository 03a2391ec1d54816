"""Brute-force floating-point checks, independent of the cell machinery.

Nothing here uses breakpoints or cells: pairs are judged by evaluating
``Σ_j min(a_ij, x_j)`` directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .breakpoints import ProblemInstance
from .exactnum import to_rat

DETECTION_TOL = 1e-9
MAX_GRID_POINTS = 2_000_000


@dataclass(frozen=True)
class OracleVerdict:
    kind: str
    holds: bool
    lambda_inferred: Optional[float]
    max_residual: float


def _matrix(inst: ProblemInstance) -> np.ndarray:
    return np.array([[float(a) for a in row] for row in inst.A])


def _vector(x) -> np.ndarray:
    return np.array([float(v) for v in x])


def _checked_vector(x, tol: float) -> np.ndarray:
    if tol <= 0:
        raise ValueError("tol must be positive")
    xv = _vector(x)
    if np.any(xv < 0) or np.any(xv > 1):
        raise ValueError("x must lie in [0, 1]^n")
    if not np.any(xv > 0):
        raise ValueError("x must not be the zero vector")
    return xv


def _infer_lambda(vals: np.ndarray, x: np.ndarray) -> float:
    i = int(np.argmax(x))
    return float(vals[i] / x[i])


def check_eigenpair(inst: ProblemInstance, x: Sequence, lam=None, tol: float = DETECTION_TOL) -> OracleVerdict:
    """Is ``A⊙x = λx`` within ``tol``?  Without ``lam`` the ratio on the largest coordinate is used."""
    xv = _checked_vector(x, tol)
    vals = np.minimum(_matrix(inst), xv[None, :]).sum(axis=1)
    lam_f = float(lam) if lam is not None else _infer_lambda(vals, xv)
    resid = float(np.max(np.abs(vals - lam_f * xv)))
    ok = resid <= tol
    if lam is None:
        # coordinates at noise level must carry a row value at noise level too
        ok = ok and bool(np.all(vals[xv <= tol] <= tol))
    return OracleVerdict("eigen", ok, lam_f, resid)


def check_constrained(inst: ProblemInstance, x: Sequence, lam=None, tol: float = DETECTION_TOL) -> OracleVerdict:
    """Eigenpair check plus ``A⊙x ≥ b - tol``."""
    v = check_eigenpair(inst, x, lam, tol)
    vals = np.minimum(_matrix(inst), _vector(x)[None, :]).sum(axis=1)
    demand_ok = bool(np.all(vals >= _vector(inst.b) - tol))
    return OracleVerdict("constrained", v.holds and demand_ok, v.lambda_inferred, v.max_residual)


def check_super(inst: ProblemInstance, x: Sequence, lam, tol: float = DETECTION_TOL) -> OracleVerdict:
    """``A⊙x ≥ λx`` (and ``≥ b`` when the instance carries a demand) within ``tol``."""
    xv = _checked_vector(x, tol)
    vals = np.minimum(_matrix(inst), xv[None, :]).sum(axis=1)
    shortfall = float(np.max(np.maximum(float(lam) * xv - vals, 0.0)))
    ok = shortfall <= tol
    if inst.b is not None:
        ok = ok and bool(np.all(vals >= _vector(inst.b) - tol))
    return OracleVerdict("super", ok, float(lam), shortfall)


def grid_scan(inst: ProblemInstance, resolution, mode: str = "eigen", lam=None,
              tol: float = DETECTION_TOL) -> list[tuple[tuple[Fraction, ...], float]]:
    """Every nonzero point of the grid ``{0, r, 2r, …, 1}^n`` passing the oracle.

    ``mode`` is ``eigen``, ``constrained`` or ``super`` (the latter needs
    ``lam``).  Hits come back in lexicographic grid order as exact grid
    coordinates with the λ used for the check.
    """
    res = to_rat(resolution)
    steps = 1 / res
    if steps.denominator != 1:
        raise ValueError("resolution must divide 1")
    steps = int(steps)
    n = inst.n
    if n > 3 or (steps + 1) ** n > MAX_GRID_POINTS:
        raise ValueError("grid scan guard: n ≤ 3 and a bounded number of grid points")
    if mode == "super" and lam is None:
        raise ValueError("super mode needs λ")
    if mode == "constrained" and inst.b is None:
        raise ValueError("constrained mode needs b")
    idx = np.indices((steps + 1,) * n).reshape(n, -1).T
    idx = idx[np.any(idx > 0, axis=1)]
    X = idx / steps
    A = _matrix(inst)
    vals = np.minimum(A[None, :, :], X[:, None, :]).sum(axis=2)
    if mode == "super":
        lams = np.full(len(X), float(lam))
        ok = np.all(lams[:, None] * X - vals <= tol, axis=1)
    else:
        arg = np.argmax(X, axis=1)
        rows = np.arange(len(X))
        lams = vals[rows, arg] / X[rows, arg] if lam is None else np.full(len(X), float(lam))
        ok = np.max(np.abs(vals - lams[:, None] * X), axis=1) <= tol
    if mode in ("constrained",) or (mode == "super" and inst.b is not None):
        ok &= np.all(vals >= _vector(inst.b)[None, :] - tol, axis=1)
    out = []
    for k in np.nonzero(ok)[0]:
        x = tuple(Fraction(int(v), steps) for v in idx[k])
        out.append((x, float(lams[k])))
    return out
