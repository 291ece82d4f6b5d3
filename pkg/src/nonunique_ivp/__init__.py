"""Euler and PushEuler polygons for an IVP that is Lipschitz in y for each x yet has two solutions."""

from .analysis import (
    ConvergenceEntry,
    ConvergenceReport,
    LipschitzEstimate,
    convergence_study,
    lipschitz_grid,
    lipschitz_per_x,
    nonuniform_witness,
    sup_distance,
)
from .integrators import (
    DomainEscape,
    IntegrationSpec,
    PolygonalCurve,
    SlopeAt,
    emit_clipped,
    euler,
    integrate,
    push_euler,
)
from .rhs_core import (
    COUNTEREXAMPLE,
    EXTENDED,
    PHI1,
    PHI1_EXTENDED,
    PHI2,
    PHI2_EXTENDED,
    ClosedFormSolution,
    DomainError,
    Interval,
    Rect,
    Region,
    RhsFunction,
    classify_region,
    eval_counterexample,
    eval_extended,
    phi1,
    phi2,
    verify_solution,
)

__version__ = "0.1.0"
