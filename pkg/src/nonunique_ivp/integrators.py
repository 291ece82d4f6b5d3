"""Fixed-step explicit Euler and PushEuler polygons."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from .rhs_core import DomainError, RhsFunction

__all__ = [
    "SlopeAt",
    "DomainEscape",
    "PolygonalCurve",
    "IntegrationSpec",
    "euler",
    "push_euler",
    "integrate",
    "emit_clipped",
]


class SlopeAt(enum.Enum):
    """Abscissa at which the slope of step ``j`` is sampled.

    ``LEFT`` uses ``f(x_{j-1}, y_{j-1})`` (the classical method). ``RIGHT`` uses
    ``f(x_j, y_{j-1})``, which is the rule that reproduces the published
    PushEuler polygons node for node.
    """

    LEFT = "left"
    RIGHT = "right"


class DomainEscape(DomainError):
    """An integration step left the domain of the right-hand side."""

    def __init__(self, index: int, x: float, y: float):
        super().__init__(f"node {index} at ({x}, {y}) leaves the domain")
        self.index = index
        self.x = x
        self.y = y


@dataclass(frozen=True)
class PolygonalCurve:
    """Nodes ``(x_j, y_j)`` of an Euler polygon with uniform step ``step``.

    ``clipped`` marks a curve whose last node is an interpolated crossing of a
    horizontal line; only that node breaks ``x_j = x_0 + j*step``.
    """

    xs: Tuple[float, ...]
    ys: Tuple[float, ...]
    step: float
    clipped: bool = False

    def __post_init__(self):
        if len(self.xs) != len(self.ys):
            raise ValueError("xs and ys differ in length")
        if not self.xs:
            raise ValueError("a curve needs at least one node")

    @property
    def nodes(self) -> list[tuple[float, float]]:
        return list(zip(self.xs, self.ys))

    def __len__(self) -> int:
        return len(self.xs)


@dataclass(frozen=True)
class IntegrationSpec:
    """Parameters of one polygon run.

    With ``clip_y`` set, integration stops at the first segment that crosses
    ``y = clip_y`` and ends in the interpolated crossing point; ``n`` is then
    an upper bound on the step count.
    """

    rhs: RhsFunction
    x0: float
    y0: float
    h: float
    n: int
    push: Optional[float] = None
    slope_at: SlopeAt = SlopeAt.LEFT
    clip_y: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.h) and self.h > 0):
            raise ValueError(f"step h must be positive and finite, got {self.h}")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"step count n must be a positive integer, got {self.n!r}")
        if not (math.isfinite(self.x0) and math.isfinite(self.y0)):
            raise ValueError("initial point must be finite")
        if self.push is not None and not math.isfinite(self.push):
            raise ValueError("push slope K must be finite")
        if self.clip_y is not None and not math.isfinite(self.clip_y):
            raise ValueError("clip_y must be finite")
        if not self.rhs.domain.contains(self.x0, self.y0):
            raise DomainError(f"initial point ({self.x0}, {self.y0}) is outside the domain of {self.rhs.name}")
        if self.clip_y is None and self.node_x(self.n) not in self.rhs.domain.x_range:
            raise DomainEscape(self.n, self.node_x(self.n), math.nan)

    def node_x(self, j: int) -> float:
        # computed directly, never accumulated
        return self.x0 + j * self.h


def _crossing(x_a: float, y_a: float, x_b: float, y_b: float, y_max: float) -> float:
    return x_a + (y_max - y_a) / (y_b - y_a) * (x_b - x_a)


def integrate(spec: IntegrationSpec) -> PolygonalCurve:
    """Run Euler stepping, using the push slope for the first step if given."""
    f = spec.rhs
    xs = [spec.x0]
    ys = [spec.y0]
    clip = spec.clip_y
    if clip is not None and spec.y0 > clip:
        return PolygonalCurve(tuple(xs), tuple(ys), spec.h, clipped=True)
    for j in range(1, spec.n + 1):
        x_prev, y_prev = xs[-1], ys[-1]
        x_j = spec.node_x(j)
        if j == 1 and spec.push is not None:
            m = spec.push
        else:
            xi = x_prev if spec.slope_at is SlopeAt.LEFT else x_j
            try:
                m = f.eval(xi, y_prev)
            except DomainError:
                raise DomainEscape(j, xi, y_prev) from None
        y_j = y_prev + m * spec.h
        if clip is not None and y_j > clip:
            xs.append(_crossing(x_prev, y_prev, x_j, y_j, clip))
            ys.append(clip)
            return PolygonalCurve(tuple(xs), tuple(ys), spec.h, clipped=True)
        if not f.domain.contains(x_j, y_j):
            raise DomainEscape(j, x_j, y_j)
        xs.append(x_j)
        ys.append(y_j)
    return PolygonalCurve(tuple(xs), tuple(ys), spec.h)


def euler(spec: IntegrationSpec) -> PolygonalCurve:
    """Classical explicit Euler polygon; ``spec.push`` must be unset."""
    if spec.push is not None:
        raise ValueError("euler() takes a spec without a push slope; use push_euler()")
    return integrate(spec)


def push_euler(spec: IntegrationSpec, k: Optional[float] = None) -> PolygonalCurve:
    """Euler polygon whose first step has the prescribed slope ``K``.

    ``(x_1, y_1) = (x_0 + h, y_0 + K*h)``; later steps follow the ordinary
    recurrence under ``spec.slope_at``. ``k`` overrides ``spec.push``.
    """
    if k is not None:
        spec = replace(spec, push=k)
    if spec.push is None:
        raise ValueError("push_euler() needs a push slope K")
    return integrate(spec)


def emit_clipped(curve: PolygonalCurve, y_max: float) -> PolygonalCurve:
    """Truncate ``curve`` at its first crossing of ``y = y_max``.

    The crossing point is appended by linear interpolation within the
    crossing segment. Curves that stay at or below ``y_max`` come back
    unchanged; a curve that starts above it reduces to its first node.
    """
    xs, ys = curve.xs, curve.ys
    if ys[0] > y_max:
        return PolygonalCurve(xs[:1], ys[:1], curve.step, clipped=True)
    for j in range(1, len(xs)):
        if ys[j] > y_max:
            x_c = _crossing(xs[j - 1], ys[j - 1], xs[j], ys[j], y_max)
            return PolygonalCurve(xs[:j] + (x_c,), ys[:j] + (y_max,), curve.step, clipped=True)
    return curve
