"""Exception hierarchy shared by all modules."""


class MetricShapeError(Exception):
    """Base class for every error raised by metricshape."""


class MetricError(MetricShapeError, ValueError):
    """A distance matrix violates a metric axiom."""


class NonzeroDiagonalError(MetricError):
    def __init__(self, i, value):
        self.i = i
        self.value = value
        super().__init__(f"NonzeroDiagonal({i}): dist[{i}][{i}] = {value!r}")


class NegativeDistanceError(MetricError):
    def __init__(self, i, j, value):
        self.i, self.j = i, j
        self.value = value
        super().__init__(f"NegativeDistance({i},{j}): dist[{i}][{j}] = {value!r}")


class NonSymmetricError(MetricError):
    def __init__(self, i, j, a, b):
        self.i, self.j = i, j
        super().__init__(
            f"NonSymmetric({i},{j}): dist[{i}][{j}] = {a!r} but dist[{j}][{i}] = {b!r}"
        )


class TriangleViolationError(MetricError):
    """dist[i][j] > dist[i][k] + dist[k][j] + tol."""

    def __init__(self, i, j, k, defect):
        self.i, self.j, self.k = i, j, k
        self.defect = defect
        super().__init__(
            f"TriangleViolation({i},{j},{k}, defect {defect:.6g}): "
            f"dist[{i}][{j}] exceeds dist[{i}][{k}] + dist[{k}][{j}]"
        )


class TooFewPointsError(MetricShapeError, ValueError):
    pass


class DomainError(MetricShapeError, ValueError):
    """Arguments outside the domain where a geometric construction is defined."""


class SpecMismatchError(MetricShapeError, ValueError):
    pass


class NotRealizableError(MetricShapeError, ValueError):
    """Three lengths cannot be the sides of a triangle in the requested space form."""


class BracketFailureError(MetricShapeError, RuntimeError):
    pass


class UnsupportedSpecError(MetricShapeError, ValueError):
    pass


class UnsupportedRegimeError(MetricShapeError, ValueError):
    """No closed-form comparison value is available for the requested (k, R, q)."""


class InfeasibleQError(MetricShapeError, ValueError):
    pass


class BudgetExceededError(MetricShapeError, RuntimeError):
    """Branch and bound ran out of nodes. ``best`` holds the incumbent."""

    def __init__(self, best, nodes):
        self.best = best
        self.nodes = nodes
        super().__init__(
            f"node budget exhausted after {nodes} nodes; best score so far {best.score!r}"
        )
