"""Exact eigenvalue and eigenvector solver for the addition-min algebra ([0,1], +, min)."""
from .breakpoints import InfeasibleError, InstanceError, ProblemInstance
from .cells import addmin_apply
from .eigensolver import CellLimitError, SolveReport, membership, solve_constrained, solve_eigen
from .exactnum import AlgebraicNumber, LambdaSet, Poly, RatFun
from .oracle import check_constrained, check_eigenpair, check_super, grid_scan
from .paramsolve import Curve, Pencil, family_sample
from .supereigen import super_max, super_region

__all__ = [
    "AlgebraicNumber", "CellLimitError", "Curve", "InfeasibleError", "InstanceError",
    "LambdaSet", "Pencil", "Poly", "ProblemInstance", "RatFun", "SolveReport",
    "addmin_apply", "check_constrained", "check_eigenpair", "check_super", "family_sample",
    "grid_scan", "membership", "solve_constrained", "solve_eigen", "super_max", "super_region",
]
