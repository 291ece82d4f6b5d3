"""Lipschitz quotients, sup-norm distances and mesh-refinement studies."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from .integrators import IntegrationSpec, PolygonalCurve, SlopeAt, integrate
from .rhs_core import (
    PHI1,
    PHI2,
    COUNTEREXAMPLE,
    ClosedFormSolution,
    DomainError,
    RhsFunction,
)

__all__ = [
    "LipschitzEstimate",
    "ConvergenceEntry",
    "ConvergenceReport",
    "lipschitz_per_x",
    "lipschitz_grid",
    "nonuniform_witness",
    "sup_distance",
    "steps_to",
    "convergence_study",
]


@dataclass(frozen=True)
class LipschitzEstimate:
    x: float
    estimate: float
    analytic: Optional[float] = None


def _with_breakpoints(rhs: RhsFunction, x: float, grid: Sequence[float], snap: float) -> list[float]:
    if rhs.breakpoints is None:
        return list(grid)
    lo, hi = grid[0], grid[-1]
    breaks = [b for b in rhs.breakpoints(x) if lo <= b <= hi and rhs.domain.contains(x, b)]
    # a grid point within `snap` of a breakpoint gives a quotient dominated by rounding
    kept = [y for y in grid if all(abs(y - b) > snap for b in breaks)]
    return sorted(set(kept) | set(breaks))


def lipschitz_per_x(
    rhs: RhsFunction,
    x: float,
    y_grid: Iterable[float],
    include_breakpoints: bool = True,
) -> LipschitzEstimate:
    """Largest difference quotient of ``f(x, .)`` over pairs of grid points.

    Breakpoints of ``rhs`` lying within the span of the grid are added first,
    since the extreme quotient of a piecewise formula sits between them; grid
    points closer than ``1e-6`` of the span to a breakpoint are replaced by it. The
    maximum over all pairs equals the maximum over neighbours of the sorted
    grid (any chord slope is a weighted mean of the neighbouring ones), which
    is what gets computed.
    """
    grid = sorted(set(y_grid))
    if len(grid) < 2:
        raise ValueError("need at least two distinct grid points")
    if include_breakpoints:
        grid = _with_breakpoints(rhs, x, grid, snap=1e-6 * (grid[-1] - grid[0]))
    values = [rhs.eval(x, y) for y in grid]
    best = 0.0
    for i in range(len(grid) - 1):
        q = abs(values[i + 1] - values[i]) / (grid[i + 1] - grid[i])
        if q > best:
            best = q
    analytic = rhs.lipschitz(x) if rhs.lipschitz is not None else None
    return LipschitzEstimate(x, best, analytic)


def lipschitz_grid(x: float, y_lo: float, y_hi: float, num: int) -> list[float]:
    """``num`` evenly spaced ordinates on ``[y_lo, y_hi]`` plus the sector breakpoints."""
    if num < 2:
        raise ValueError("num must be at least 2")
    snap = 1e-6 * (y_hi - y_lo)
    breaks = [b for b in (x * x / 2, x * x) if y_lo <= b <= y_hi]
    pts = {
        y
        for y in (y_lo + (y_hi - y_lo) * i / (num - 1) for i in range(num))
        if all(abs(y - b) > snap for b in breaks)
    }
    return sorted(pts | set(breaks))


def nonuniform_witness(x: float, rhs: RhsFunction = COUNTEREXAMPLE) -> float:
    """Difference quotient of ``f(x, .)`` across the middle sector.

    Equals ``5/x`` for the counterexample, so no single Lipschitz constant
    works near ``x = 0``.
    """
    if not x > 0:
        raise DomainError(f"witness needs x > 0, got {x}")
    lo, hi = x * x / 2, x * x
    return (rhs.eval(x, hi) - rhs.eval(x, lo)) / (hi - lo)


def sup_distance(curve: PolygonalCurve, sol: ClosedFormSolution) -> float:
    """``max_j |y_j - sol(x_j)|`` over the polygon nodes."""
    return max(abs(y - sol(x)) for x, y in zip(curve.xs, curve.ys))


@dataclass(frozen=True)
class ConvergenceEntry:
    h: float
    dist_phi1: float
    dist_phi2: float


@dataclass(frozen=True)
class ConvergenceReport:
    entries: Tuple[ConvergenceEntry, ...]
    target: str

    def column(self, name: str) -> list[float]:
        return [getattr(e, name) for e in self.entries]

    def strictly_decreasing(self, name: str) -> bool:
        col = self.column(name)
        return all(b < a for a, b in zip(col, col[1:]))


def steps_to(x0: float, x_end: float, h: float, rel_tol: float = 1e-9) -> int:
    """Number of steps of size ``h`` from ``x0`` to ``x_end``; ``h`` must divide the span."""
    span = x_end - x0
    n = round(span / h)
    if n < 1 or abs(n * h - span) > rel_tol * max(1.0, abs(span)):
        raise ValueError(f"h={h} does not divide [{x0}, {x_end}]")
    return n


def convergence_study(
    rhs: RhsFunction,
    push: Optional[float],
    h_seq: Sequence[float],
    x_end: float,
    *,
    x0: float = 0.0,
    y0: float = 0.0,
    slope_at: SlopeAt = SlopeAt.LEFT,
    references: Tuple[ClosedFormSolution, ClosedFormSolution] = (PHI1, PHI2),
) -> ConvergenceReport:
    """Integrate to ``x_end`` for each ``h`` and record sup distances to both references.

    Uses PushEuler when ``push`` is given and plain Euler otherwise. Entries
    keep the order of ``h_seq``, which must be strictly decreasing.
    """
    if not h_seq:
        raise ValueError("h_seq is empty")
    if any(b >= a for a, b in zip(h_seq, h_seq[1:])):
        raise ValueError("h_seq must be strictly decreasing")
    ref1, ref2 = references
    entries = []
    for h in h_seq:
        spec = IntegrationSpec(
            rhs, x0, y0, h, steps_to(x0, x_end, h), push=push, slope_at=slope_at
        )
        curve = integrate(spec)
        entries.append(ConvergenceEntry(h, sup_distance(curve, ref1), sup_distance(curve, ref2)))
    target = ref2.name if push is not None else ref1.name
    return ConvergenceReport(tuple(entries), target)
