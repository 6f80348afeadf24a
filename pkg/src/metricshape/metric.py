"""Finite metric spaces and their elementary invariants."""

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_square_matrix
from .errors import (
    NegativeDistanceError,
    NonSymmetricError,
    NonzeroDiagonalError,
    TooFewPointsError,
    TriangleViolationError,
)


@dataclass(frozen=True)
class Tolerances:
    """Numerical slacks used across the package.

    ``tol_metric`` is the additive slack on the triangle inequality,
    ``tol_value`` the slack when comparing invariant values against bounds,
    and ``tol_root`` the residual target of root finders.
    """

    tol_metric: float = 1e-9
    tol_value: float = 1e-9
    tol_root: float = 1e-10

    def __post_init__(self):
        for name in ("tol_metric", "tol_value", "tol_root"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    def to_dict(self):
        return {"tol_metric": self.tol_metric, "tol_value": self.tol_value,
                "tol_root": self.tol_root}


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """A validated finite metric space.

    Build one with :func:`validate_metric`; the distance matrix is stored
    read-only. ``points`` optionally keeps the model-space points a sample
    was drawn from.
    """

    dist: np.ndarray
    labels: tuple = None
    provenance: dict = field(default_factory=lambda: {"source": "loaded"})
    points: tuple = None

    @property
    def n_points(self):
        return self.dist.shape[0]

    def __len__(self):
        return self.n_points

    def subspace(self, indices):
        """The metric subspace on ``indices`` (already valid, no re-check)."""
        idx = np.asarray(indices, dtype=int)
        sub = self.dist[np.ix_(idx, idx)].copy()
        sub.setflags(write=False)
        labels = None if self.labels is None else tuple(self.labels[i] for i in idx)
        points = None if self.points is None else tuple(self.points[i] for i in idx)
        prov = {"source": "subspace", "parent": self.provenance,
                "indices": [int(i) for i in idx]}
        return FiniteMetricSpace(sub, labels, prov, points)

    def scaled(self, c):
        """The same space with every distance multiplied by ``c > 0``."""
        if not c > 0:
            raise ValueError("scale factor must be positive")
        d = self.dist * c
        d.setflags(write=False)
        return FiniteMetricSpace(d, self.labels, {"source": "scaled", "factor": c,
                                                  "parent": self.provenance})


def validate_metric(matrix, tol=None, labels=None, provenance=None, points=None):
    """Check the metric axioms and wrap ``matrix`` as a FiniteMetricSpace.

    Diagonal zeros, non-negativity and symmetry are checked exactly; the
    triangle inequality ``d[i,j] <= d[i,k] + d[k,j]`` allows an additive
    slack of ``tol.tol_metric``. The first violation in lexicographic order
    of ``(i, j)`` (and ``(i, j, k)`` for triangles) is raised.
    """
    tol = Tolerances() if tol is None else tol
    d = check_square_matrix(matrix)
    n = d.shape[0]

    diag = np.flatnonzero(np.diag(d) != 0.0)
    if diag.size:
        i = int(diag[0])
        raise NonzeroDiagonalError(i, float(d[i, i]))
    neg = np.argwhere(d < 0)
    if neg.size:
        i, j = (int(v) for v in neg[0])
        raise NegativeDistanceError(i, j, float(d[i, j]))
    asym = np.argwhere(d != d.T)
    if asym.size:
        i, j = (int(v) for v in asym[0])
        raise NonSymmetricError(i, j, float(d[i, j]), float(d[j, i]))

    for i in range(n):
        # defect[j, k] = d[i, j] - d[i, k] - d[k, j]
        defect = d[i][:, None] - d[i][None, :] - d
        bad = defect > tol.tol_metric
        if bad.any():
            j, k = np.unravel_index(int(np.argmax(bad)), bad.shape)
            raise TriangleViolationError(i, int(j), int(k), float(defect[j, k]))

    d.setflags(write=False)
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != n:
            raise ValueError(f"expected {n} labels, got {len(labels)}")
    if provenance is None:
        provenance = {"source": "loaded"}
    if points is not None:
        points = tuple(points)
    return FiniteMetricSpace(d, labels, dict(provenance), points)


def diameter(space):
    """Largest pairwise distance; 0 for a single point."""
    return float(space.dist.max())


def radius(space):
    """Return ``(rad, center)`` with rad = min_i max_j dist[i, j].

    Ties go to the smallest index.
    """
    ecc = space.dist.max(axis=1)
    center = int(np.argmin(ecc))
    return float(ecc[center]), center


def excess(space):
    """min over pairs (p, q) of max_x [d(p,x) + d(x,q) - d(p,q)], by full scan."""
    d = space.dist
    n = d.shape[0]
    if n < 2:
        raise TooFewPointsError("excess needs at least two points")
    best = np.inf
    for p in range(n):
        # worst[q] = max_x d[p, x] + d[x, q] - d[p, q]
        worst = (d[p][:, None] + d).max(axis=0) - d[p]
        best = min(best, float(worst.min()))
    return best


def covering_radius(space):
    """Largest nearest-neighbour distance, a proxy for the sampling resolution."""
    d = space.dist
    if d.shape[0] < 2:
        return 0.0
    masked = d + np.diag(np.full(d.shape[0], np.inf))
    return float(masked.min(axis=1).max())
