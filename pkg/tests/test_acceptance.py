"""Exit criteria. Each test records one line in the "acceptance criteria" summary section."""

import math
import random
import time

import pytest

from figure1_data import H001, H005, H010
from nonunique_ivp import cli
from nonunique_ivp.analysis import lipschitz_grid, lipschitz_per_x, nonuniform_witness, sup_distance
from nonunique_ivp.integrators import IntegrationSpec, SlopeAt, emit_clipped, euler, push_euler
from nonunique_ivp.rhs_core import (
    COUNTEREXAMPLE,
    EXTENDED,
    PHI1,
    PHI1_EXTENDED,
    PHI2,
    PHI2_EXTENDED,
    PHI2_EXTENDED_END,
    eval_counterexample,
    verify_solution,
)


def best_time(fn, repeat=7):
    """Minimum wall time of ``fn()`` over ``repeat`` runs, and its last result."""
    best, result = math.inf, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def figure_polygon(h):
    spec = IntegrationSpec(
        COUNTEREXAMPLE, 0.0, 0.0, h, math.ceil(2 / h),
        push=1.0, slope_at=SlopeAt.RIGHT, clip_y=1.0,
    )
    return push_euler(spec)


def rounded(nodes, digits):
    return [(round(x, digits), round(y, digits)) for x, y in nodes]


def test_ac1_figure_h010(criterion):
    def run():
        curve = push_euler(IntegrationSpec(COUNTEREXAMPLE, 0.0, 0.0, 0.1, 8, slope_at=SlopeAt.RIGHT), k=1.0)
        return curve, emit_clipped(curve, 1.0)

    t, (curve, clipped) = best_time(run)
    criterion("AC1 Figure 1 h=0.1 nodes and crossing", f"{t * 1e3:.3f} ms, crossing {clipped.xs[-1]:.6g}")
    assert rounded(curve.nodes[:8], 2) == H010[:-1]
    assert clipped.xs[-1] == pytest.approx(0.7375, abs=1e-12)
    assert round(clipped.xs[-1], 2) == 0.74 == H010[-1][0]
    assert t < 1e-3


def test_ac2_figure_h005_h001(criterion):
    t, (c005, c001) = best_time(lambda: (figure_polygon(0.05), figure_polygon(0.01)))
    criterion("AC2 Figure 1 h=0.05 and h=0.01 node lists to 4 decimals", f"{t * 1e3:.3f} ms")
    assert len(c005) - 1 == 16 and len(c001) - 1 == 81
    assert rounded(c005.nodes, 4) == [(round(x, 4), y) for x, y in H005]
    assert rounded(c001.nodes, 4) == [(round(x, 4), y) for x, y in H001]
    assert round(c001.xs[-1], 4) == 0.8075
    assert t < 10e-3


def test_ac3_dual_solutions(criterion):
    quad = [i / 40 for i in range(41)]
    upper = [PHI2_EXTENDED_END * i / 40 for i in range(41)]
    ext1 = [-1 + 2 * i / 40 for i in range(41)]
    ext2 = [-1 + (PHI2_EXTENDED_END + 1) * i / 40 for i in range(41)]

    def run():
        return (
            verify_solution(PHI1, COUNTEREXAMPLE, quad, 1e-12),
            verify_solution(PHI2, COUNTEREXAMPLE, upper, 1e-12),
            verify_solution(PHI1_EXTENDED, EXTENDED, ext1, 1e-12),
            verify_solution(PHI2_EXTENDED, EXTENDED, ext2, 1e-12),
        )

    t, results = best_time(run)
    criterion("AC3 phi1 and phi2 solve both right-hand sides", f"{t * 1e3:.3f} ms")
    assert all(results)
    assert t < 1e-3


def independent_polygon(h, x_end, first_slope=None):
    """Plain re-derivation of the left-abscissa recurrence, sharing no library code."""
    n = round(x_end / h)
    y, worst1, worst2 = 0.0, 0.0, 0.0
    for j in range(1, n + 1):
        x = (j - 1) * h
        if j == 1 and first_slope is not None:
            m = first_slope
        elif x == 0:
            m = 0.0
        elif y <= x * x / 2:
            m = x / 2
        elif y < x * x:
            m = x / 2 + 5 * (y - x * x / 2) / x
        else:
            m = 3 * x
        y += m * h
        xj = j * h
        worst1 = max(worst1, abs(y - xj * xj / 4))
        worst2 = max(worst2, abs(y - 1.5 * xj * xj))
    return worst1, worst2


@pytest.fixture(scope="module")
def dichotomy_oracle():
    fine = 1e-5
    e1, _ = independent_polygon(fine, 0.8)
    _, p2 = independent_polygon(fine, 0.8, first_slope=1.0)
    coarse_e1, _ = independent_polygon(1e-3, 0.8)
    _, coarse_p2 = independent_polygon(1e-3, 0.8, first_slope=1.0)
    # first-order error: scale the fine-mesh distance up to h = 1e-3
    return {"euler": e1 * (1e-3 / fine), "push": p2 * (1e-3 / fine),
            "euler_1e3": coarse_e1, "push_1e3": coarse_p2}


def test_ac4_uniqueness_failure(criterion, dichotomy_oracle):
    def run():
        n = 800
        e = euler(IntegrationSpec(COUNTEREXAMPLE, 0.0, 0.0, 0.001, n))
        p = push_euler(IntegrationSpec(COUNTEREXAMPLE, 0.0, 0.0, 0.001, n, slope_at=SlopeAt.LEFT), k=1.0)
        return sup_distance(e, PHI1), sup_distance(p, PHI2)

    t, (d1, d2) = best_time(run, repeat=5)
    criterion(
        "AC4 same mesh, two limits: euler->phi1 <= 0.01, push_euler->phi2 <= 0.02",
        f"{t * 1e3:.2f} ms, d1={d1:.3g}, d2={d2:.3g}",
    )
    oracle = dichotomy_oracle
    assert oracle["euler"] <= 0.01 and oracle["push"] <= 0.02
    assert d1 == pytest.approx(oracle["euler_1e3"], rel=1e-9)
    assert d2 == pytest.approx(oracle["push_1e3"], rel=1e-9)
    assert d1 == pytest.approx(oracle["euler"], rel=0.05)
    assert d2 == pytest.approx(oracle["push"], rel=0.05)
    assert d1 <= 0.01
    assert d2 <= 0.02
    assert t < 50e-3


def test_ac5_lipschitz(criterion):
    def run():
        ests = [lipschitz_per_x(COUNTEREXAMPLE, x, lipschitz_grid(x, 0.0, 2.0, 21)) for x in (0.1, 0.5, 1.0)]
        wit = [nonuniform_witness(2.0 ** -k) * 2.0 ** -k for k in range(11)]
        return ests, wit

    t, (ests, wit) = best_time(run)
    criterion("AC5 per-x Lipschitz constant 5/x and unbounded witness", f"{t * 1e3:.3f} ms")
    for e in ests:
        assert abs(e.estimate - 5 / e.x) <= 1e-9
    assert all(abs(w - 5) <= 1e-12 for w in wit)
    assert t < 1e-3


def test_ac6_first_order(criterion):
    def run():
        return [
            sup_distance(euler(IntegrationSpec(COUNTEREXAMPLE, 0.0, 0.0, h, round(0.8 / h))), PHI1)
            for h in (0.02, 0.01, 0.005)
        ]

    t, dists = best_time(run)
    ratios = [a / b for a, b in zip(dists, dists[1:])]
    criterion("AC6 euler error halves with h", f"{t * 1e3:.3f} ms, ratios {', '.join(f'{r:.3f}' for r in ratios)}")
    assert all(1.7 <= r <= 2.3 for r in ratios)
    assert t < 10e-3


def test_ac7_sector_capture(criterion):
    def run():
        ok = True
        for h in (0.1, 0.05, 0.01, 0.001):
            n = round(0.8 / h)
            for slope_at in SlopeAt:
                s = IntegrationSpec(COUNTEREXAMPLE, 0.0, 0.0, h, n, slope_at=slope_at)
                e = euler(s)
                p = push_euler(s, k=1.0)
                ok &= all(0 <= y <= x * x / 2 for x, y in e.nodes[2:])
                ok &= all(y >= x * x for x, y in p.nodes[1:])
        return ok

    t, ok = best_time(run, repeat=3)
    criterion("AC7 euler stays in the lower sector, push_euler in the upper", f"{t * 1e3:.2f} ms")
    assert ok
    # both slope conventions are swept, so the budget is checked per convention
    assert t / 2 < 10e-3


def test_ac8_continuity_monotonicity(criterion):
    rng = random.Random(20261014)
    samples = [(rng.uniform(0.0, 1.0) or 1.0, rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)) for _ in range(10_000)]

    def run():
        f = eval_counterexample
        bad = 0
        for x, y1, y2 in samples:
            lo, mid_hi = x * x / 2, x * x
            # middle formula evaluated at both boundaries
            if abs(x / 2 + 5 * (lo - lo) / x - x / 2) != 0:
                bad += 1
            if abs(x / 2 + 5 * (mid_hi - lo) / x - 3 * x) > 1e-12:
                bad += 1
            if y1 > y2:
                y1, y2 = y2, y1
            if f(x, y1) > f(x, y2):
                bad += 1
        return bad

    t, bad = best_time(run, repeat=3)
    criterion("AC8 branch continuity and monotonicity on 1e4 samples", f"{t * 1e3:.2f} ms")
    assert bad == 0
    assert t < 100e-3


def test_ac9_figure_determinism(criterion, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for fmt in ("csv", "svg"):
        assert cli.main(["figure", "--out", str(a), "--format", fmt]) == 0
        assert cli.main(["figure", "--out", str(b), "--format", fmt]) == 0
    files = sorted(p.name for p in a.iterdir())
    criterion("AC9 figure output is byte-identical across runs", f"{len(files)} files")
    assert files == sorted(p.name for p in b.iterdir())
    assert len(files) == 8
    for name in files:
        assert (a / name).read_bytes() == (b / name).read_bytes()
