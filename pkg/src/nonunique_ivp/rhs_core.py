"""Right-hand sides and exact solutions of the three-sector counterexample.

The first quadrant is split by the parabolas ``y = x**2/2`` and ``y = x**2``
into a lower, middle and upper sector. On the lower sector ``f = x/2``, on the
upper sector ``f = 3x``, and the middle sector interpolates linearly in ``y``.
For fixed ``x`` the map ``y -> f(x, y)`` is Lipschitz with constant ``5/x``,
yet ``y' = f(x, y), y(0) = 0`` has the two solutions ``x**2/4`` and
``3x**2/2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Tuple

__all__ = [
    "DomainError",
    "Rect",
    "Interval",
    "Region",
    "RhsFunction",
    "ClosedFormSolution",
    "eval_counterexample",
    "eval_extended",
    "classify_region",
    "phi1",
    "phi2",
    "PHI2_EXTENDED_END",
    "COUNTEREXAMPLE",
    "EXTENDED",
    "PHI1",
    "PHI2",
    "PHI1_EXTENDED",
    "PHI2_EXTENDED",
    "verify_solution",
    "solution_residuals",
]

PHI2_EXTENDED_END = math.sqrt(2.0 / 3.0)


class DomainError(ValueError):
    """An argument lies outside the domain of a function or solution."""


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class Rect:
    """Closed rectangle ``[x_lo, x_hi] x [y_lo, y_hi]``; bounds may be infinite."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    @property
    def x_range(self) -> Interval:
        return Interval(self.x_lo, self.x_hi)

    @property
    def y_range(self) -> Interval:
        return Interval(self.y_lo, self.y_hi)

    def contains(self, x: float, y: float) -> bool:
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi


class Region(enum.Enum):
    LOWER = "lower"
    MIDDLE = "middle"
    UPPER = "upper"


def _check_quadrant(x: float, y: float) -> None:
    if not (x >= 0 and y >= 0):
        raise DomainError(f"({x}, {y}) is outside the first quadrant")


def eval_counterexample(x: float, y: float) -> float:
    """Evaluate the three-sector field on ``[0, inf) x [0, inf)``.

    Branch conditions are compared exactly. The middle formula divides by
    ``x``, so ``x == 0`` is routed through the constant branches first (the
    middle sector is empty there and ``f(0, y) == 0``).
    """
    _check_quadrant(x, y)
    if x == 0:
        return 0.0
    lower = x * x / 2
    upper = x * x
    if y <= lower:
        return x / 2
    if y < upper:
        return x / 2 + 5 * (y - lower) / x
    return 3 * x


def eval_extended(x: float, y: float) -> float:
    """Evaluate the field continued to the square ``[-1, 1] x [-1, 1]``."""
    if not (-1 <= x <= 1 and -1 <= y <= 1):
        raise DomainError(f"({x}, {y}) is outside [-1, 1]^2")
    if x < 0:
        return 0.0
    if y < 0:
        return x / 2
    return eval_counterexample(x, y)


def classify_region(x: float, y: float) -> Region:
    """Return the sector containing ``(x, y)``.

    ``y == x**2/2`` belongs to the lower and ``y == x**2`` to the upper sector.
    The origin, where both parabolas meet, is reported as lower.
    """
    _check_quadrant(x, y)
    if y <= x * x / 2:
        return Region.LOWER
    if y < x * x:
        return Region.MIDDLE
    return Region.UPPER


def _counterexample_breakpoints(x: float) -> Tuple[float, ...]:
    if x <= 0:
        return ()
    return (x * x / 2, x * x)


def _counterexample_lipschitz(x: float) -> float:
    return 5 / x if x > 0 else 0.0


@dataclass(frozen=True)
class RhsFunction:
    """A scalar field ``f(x, y)`` with a declared rectangular domain.

    ``breakpoints(x)`` lists the ``y`` values where ``f(x, .)`` changes formula
    and ``lipschitz(x)`` gives the exact Lipschitz constant of ``f(x, .)``,
    when these are known.
    """

    func: Callable[[float, float], float]
    domain: Rect
    name: str = "rhs"
    breakpoints: Optional[Callable[[float], Tuple[float, ...]]] = field(default=None, compare=False)
    lipschitz: Optional[Callable[[float], float]] = field(default=None, compare=False)

    def __call__(self, x: float, y: float) -> float:
        return self.eval(x, y)

    def eval(self, x: float, y: float) -> float:
        if not self.domain.contains(x, y):
            raise DomainError(f"({x}, {y}) is outside the domain of {self.name}")
        return self.func(x, y)


INF = math.inf

COUNTEREXAMPLE = RhsFunction(
    eval_counterexample,
    Rect(0.0, INF, 0.0, INF),
    name="counterexample",
    breakpoints=_counterexample_breakpoints,
    lipschitz=_counterexample_lipschitz,
)

EXTENDED = RhsFunction(
    eval_extended,
    Rect(-1.0, 1.0, -1.0, 1.0),
    name="extended",
    breakpoints=_counterexample_breakpoints,
    lipschitz=_counterexample_lipschitz,
)


@dataclass(frozen=True)
class ClosedFormSolution:
    """An exact solution together with its derivative and interval of validity."""

    formula: Callable[[float], float]
    derivative: Callable[[float], float]
    validity: Interval
    name: str = "solution"

    def _check(self, x: float) -> None:
        if x not in self.validity:
            raise DomainError(
                f"x={x} is outside the validity interval "
                f"[{self.validity.lo}, {self.validity.hi}] of {self.name}"
            )

    def __call__(self, x: float) -> float:
        self._check(x)
        return self.formula(x)

    def slope(self, x: float) -> float:
        self._check(x)
        return self.derivative(x)


def _phi1(x: float) -> float:
    return x * x / 4 if x >= 0 else 0.0


def _dphi1(x: float) -> float:
    return x / 2 if x >= 0 else 0.0


def _phi2(x: float) -> float:
    return 3 * x * x / 2 if x >= 0 else 0.0


def _dphi2(x: float) -> float:
    return 3 * x if x >= 0 else 0.0


PHI1 = ClosedFormSolution(_phi1, _dphi1, Interval(0.0, INF), name="phi1")
PHI2 = ClosedFormSolution(_phi2, _dphi2, Interval(0.0, INF), name="phi2")
PHI1_EXTENDED = ClosedFormSolution(_phi1, _dphi1, Interval(-1.0, 1.0), name="phi1")
PHI2_EXTENDED = ClosedFormSolution(_phi2, _dphi2, Interval(-1.0, PHI2_EXTENDED_END), name="phi2")


def phi1(x: float, extended: bool = False) -> float:
    """``x**2/4`` for ``x >= 0``; zero on the negative half of the extended interval."""
    return (PHI1_EXTENDED if extended else PHI1)(x)


def phi2(x: float, extended: bool = False) -> float:
    """``3x**2/2`` for ``x >= 0``; zero for ``x < 0``.

    The extended version stops at ``sqrt(2/3)``, where it leaves the unit square.
    """
    return (PHI2_EXTENDED if extended else PHI2)(x)


def solution_residuals(
    sol: ClosedFormSolution, rhs: RhsFunction, grid: Iterable[float]
) -> list[tuple[float, float]]:
    """Pairs ``(x, |sol'(x) - f(x, sol(x))|)`` over ``grid``."""
    out = []
    for x in grid:
        if x not in rhs.domain.x_range:
            raise DomainError(f"x={x} is outside the x-range of {rhs.name}")
        out.append((x, abs(sol.slope(x) - rhs.eval(x, sol(x)))))
    return out


def verify_solution(
    sol: ClosedFormSolution, rhs: RhsFunction, grid: Iterable[float], tol: float
) -> bool:
    """True iff ``sol`` satisfies ``y' = f(x, y)`` within ``tol`` on every grid point."""
    return all(r <= tol for _, r in solution_residuals(sol, rhs, grid))
