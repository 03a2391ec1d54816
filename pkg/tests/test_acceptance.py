"""Acceptance criteria 1-7, each reported as a single PASS/FAIL line."""
import contextlib
import json
import random
import time
import warnings
from fractions import Fraction as F

import pytest

from addmin.breakpoints import ProblemInstance, compute_alpha_check, compute_Q_K
from addmin.cells import addmin_apply, iter_cells
from addmin.cli import main
from addmin.eigensolver import CellLimitError, membership, solve_constrained, solve_eigen
from addmin.exactnum import AlgebraicNumber, LambdaSet
from addmin.oracle import check_eigenpair, grid_scan
from addmin.paramsolve import Curve, Pencil, family_sample
from addmin.supereigen import super_max, super_region

from .conftest import ACCEPTANCE_LINES, EX_DEMAND, EX_EIGEN, EX_SUPER, EX_SUPER_DEMAND


@contextlib.contextmanager
def criterion(number: int, title: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException as e:
        line = f"criterion {number} ({title}): FAIL - {type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    line = f"criterion {number} ({title}): PASS in {time.perf_counter() - start:.2f} s"
    ACCEPTANCE_LINES.append(line)
    print(line)


def timed(fn, *args):
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


def on_segment(region, lo, hi, lo_closed):
    for k in range(0, 101):
        t = F(k, 200)
        inside = (lo <= t if lo_closed else lo < t) and t <= hi
        if region.contains((t, t)) != inside:
            return False
    # nothing off the diagonal
    return not any(region.contains((F(a, 20), F(b, 20))) for a in range(9) for b in range(9) if a != b)


def test_criterion_1_eigen_example():
    with criterion(1, "eigen example exact"):
        inst = ProblemInstance.from_values(EX_EIGEN)
        rep, dt = timed(solve_eigen, inst)
        assert rep.lambda_set == LambdaSet.interval(1, 2)
        assert rep.stats.cells_enumerated == 9 and rep.stats.cells_nonempty == 5
        pencils = [f for f in rep.families if isinstance(f, Pencil)]
        assert len(pencils) == 1
        p = pencils[0]
        assert p.lambda_star == 2 and not p.approx
        assert p.base == (0, 0) and p.basis == ((1, 1),)
        assert [t for t in (F(k, 100) for k in range(0, 30)) if p.region.contains((t,))] == [
            F(k, 100) for k in range(1, 21)
        ]
        curve = next(f for f in rep.families if f.cell_index == (2, 1))
        (piece,) = curve.lambda_set.pieces
        assert piece.hi == 2 and piece.lo_closed and piece.hi_closed
        lo = piece.lo
        assert isinstance(lo, AlgebraicNumber) and lo.width <= F(1, 10**9)
        # (√2+2)/2 is the root of 2λ² − 4λ + 1 above 1
        assert lo.lo ** 2 * 2 - lo.lo * 4 + 1 < 0 < lo.hi ** 2 * 2 - lo.hi * 4 + 1
        for lam in (F(18, 10), F(19, 10), F(2)):
            assert curve.point(lam) == (F(1, 5) / (lam - 1) ** 2, F(1, 5) / (lam - 1))
        assert dt < 0.1, f"took {dt:.3f} s"


def test_criterion_2_constrained_example():
    with criterion(2, "constrained example exact"):
        inst = ProblemInstance.from_values(EX_EIGEN, EX_DEMAND)
        rep, dt = timed(solve_constrained, inst)
        assert rep.lambda_set == LambdaSet.interval(1, F(3, 2))
        assert rep.stats.cells_enumerated == 6
        got = {f.cell_index: f.lambda_set for f in rep.families}
        # p_1..p_3 are (1, ·), p_4..p_6 are (2, ·)
        assert got == {
            (2, 1): LambdaSet.interval(F(7, 5), F(3, 2)),
            (2, 2): LambdaSet.interval(F(7, 6), F(7, 5)),
            (2, 3): LambdaSet.interval(1, F(7, 6)),
        }
        assert all(isinstance(f, Curve) for f in rep.families)
        assert dt < 0.1, f"took {dt:.3f} s"


def test_criterion_3_super_region():
    with criterion(3, "super region example exact"):
        inst = ProblemInstance.from_values(EX_SUPER)
        reg, dt = timed(super_region, inst, 1)
        cells = {p.cell_index for p in reg.pieces}
        assert (1, 2) not in cells and (2, 2) not in cells
        assert on_segment(reg, F(0), F(2, 5), lo_closed=False)
        assert dt < 0.1, f"took {dt:.3f} s"


def test_criterion_4_super_max():
    with criterion(4, "maximum constrained supereigenvalue"):
        inst = ProblemInstance.from_values(EX_SUPER, EX_SUPER_DEMAND)
        res, dt = timed(super_max, inst)
        assert res.lambda_opt == 1 and res.exact
        assert sorted(o.value for o in res.per_cell) == [F(2, 3), F(2, 3), 1, 1]
        assert all(o.exact for o in res.per_cell)
        assert on_segment(res.region, F(3, 10), F(2, 5), lo_closed=True)
        assert dt < 0.5, f"took {dt:.3f} s"


def lattice_2x2(seed):
    rng = random.Random(1000 + seed)
    return ProblemInstance.from_values([[F(rng.randint(0, 20), 20) for _ in range(2)] for _ in range(2)])


def test_criterion_5_oracle_completeness():
    with criterion(5, "oracle completeness on 50 random 2x2"):
        start = time.perf_counter()
        total_hits = 0
        for seed in range(50):
            inst = lattice_2x2(seed)
            rep = solve_eigen(inst)
            for x, lam in grid_scan(inst, F(1, 100), tol=1e-9):
                total_hits += 1
                m = membership(inst, x, report=rep, tol=1e-6)
                assert m is not None, f"seed {seed}: grid hit {x} (λ≈{lam}) lies on no family"
            for fam in rep.families:
                for s in family_sample(fam, 10, seed):
                    v = check_eigenpair(inst, s.x, s.lam, tol=1e-12)
                    assert v.holds, f"seed {seed}: sample {s} residual {v.max_residual}"
        assert total_hits > 0
        elapsed = time.perf_counter() - start
        assert elapsed < 60, f"took {elapsed:.1f} s"


def _random_instance(rng, n, with_b=False):
    A = [[F(rng.randint(0, 20), 20) for _ in range(n)] for _ in range(n)]
    b = [F(rng.randint(1, 10), 20) for _ in range(n)] if with_b else None
    return ProblemInstance.from_values(A, b)


def test_criterion_6_invariants():
    with criterion(6, "exact invariants"):
        rng = random.Random(6)
        # λ-bound for eigen and supereigen values
        for _ in range(10):
            inst = _random_instance(rng, rng.choice((2, 3)))
            rep = solve_eigen(inst)
            for p in rep.lambda_set.pieces:
                assert p.lo >= 0 and p.hi <= inst.n
        for _ in range(10):
            inst = _random_instance(rng, 2, with_b=True)
            if all(sum(r) >= bi for r, bi in zip(inst.A, inst.b)):
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")  # random diagonals are expected here
                    res = super_max(inst)
                assert 0 <= res.lambda_opt <= inst.n
        # α̌ ≤ x and A⊙x ≥ b on 100 constrained samples per instance
        instances = [ProblemInstance.from_values(EX_EIGEN, EX_DEMAND)]
        while len(instances) < 5:
            inst = _random_instance(rng, 2, with_b=True)
            if all(sum(r) >= bi for r, bi in zip(inst.A, inst.b)) and solve_constrained(inst).families:
                instances.append(inst)
        for inst in instances:
            fams = solve_constrained(inst).families
            alpha = compute_alpha_check(inst)
            samples = []
            seed = 0
            while len(samples) < 100:
                for fam in fams:
                    samples.extend(s for s in family_sample(fam, 5, seed) if not s.approx)
                seed += 1
                if seed > 200:
                    break
            assert len(samples) >= 100
            for s in samples[:100]:
                assert all(xj >= aj for xj, aj in zip(s.x, alpha))
                ax = addmin_apply(inst, s.x)
                assert all(v >= bi for v, bi in zip(ax, inst.b))
                assert ax == tuple(s.lam * v for v in s.x)
        # cell identity on 100 box samples per cell
        for n in (1, 2, 3):
            inst = _random_instance(rng, n)
            for cell in iter_cells(inst, compute_Q_K(inst)):
                for _ in range(100):
                    x = tuple(lo + (hi - lo) * F(rng.randint(0, 997), 997) for lo, hi in cell.box)
                    assert addmin_apply(inst, x) == cell.apply(x)


def test_criterion_7_complexity(tmp_path, capsys):
    with criterion(7, "cell counting, dense 4x4, guard"):
        rng = random.Random(7)
        for _ in range(10):
            inst = _random_instance(rng, rng.choice((2, 3)))
            t = compute_Q_K(inst).t
            rep = solve_eigen(inst)
            expected = 1
            for tj in t:
                expected *= tj + 1
            assert rep.stats.cells_enumerated == expected
        A = [[F(0)] * 4 for _ in range(4)]
        for j in range(4):
            for i, v in enumerate(rng.sample(range(1, 20), 4)):
                A[i][j] = F(v, 20)
        inst = ProblemInstance.from_values(A)
        assert compute_Q_K(inst).t == (4, 4, 4, 4)
        rep, dt = timed(solve_eigen, inst)
        assert rep.stats.cells_enumerated == 625
        assert dt < 10, f"dense 4x4 took {dt:.2f} s"
        # dense 10×10: 11^10 cells, refused without --force
        big = [[f"{rng.randint(1, 99) / 100}" for _ in range(10)] for _ in range(10)]
        with pytest.raises(CellLimitError):
            solve_eigen(ProblemInstance.from_values(big))
        path = tmp_path / "big.json"
        path.write_text(json.dumps({"n": 10, "A": big}))
        assert main(["eigen", "--input", str(path)]) == 1
        assert "cells exceed" in capsys.readouterr().err
