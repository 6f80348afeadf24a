"""Global shape invariants of finite and sampled metric spaces.

q-extents, packing radii, radius, diameter and excess; constant-curvature
model spaces; numerical checks of comparison inequalities.
"""

from .errors import (
    BudgetExceededError,
    DomainError,
    InfeasibleQError,
    MetricError,
    MetricShapeError,
    NegativeDistanceError,
    NonSymmetricError,
    NonzeroDiagonalError,
    NotRealizableError,
    TooFewPointsError,
    TriangleViolationError,
    UnsupportedRegimeError,
    UnsupportedSpecError,
)
from .estimators import ExtentSelector, PackingSelector, ShapeInvariants
from .invariants import (
    InvariantReport,
    compute_report,
    extent_estimate,
    interval_extent,
    packing_radius,
    q_extent,
)
from .metric import (
    FiniteMetricSpace,
    Tolerances,
    covering_radius,
    diameter,
    excess,
    radius,
    validate_metric,
)
from .solvers import Configuration, SolverBudget, anneal, exact_subset, greedy_exchange
from .solvers.continuous import continuous_refine
from .theorems import (
    TheoremVerdict,
    check_extent_bound,
    check_packing_bound,
    check_toponogov_point,
    theorem_g_fixture,
)

__version__ = "0.1.0"
