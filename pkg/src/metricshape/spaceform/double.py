"""The double of the regular simplex: two copies glued along their boundary.

Each copy is geodesically convex, so distances inside one copy are ambient
distances. A shortest path between the two copies crosses the common
boundary once, giving min over boundary points b of d(p, b) + d(b, q).
"""

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from ..errors import SpecMismatchError
from .models import (
    ModelPoint,
    ModelSpaceSpec,
    flat,
    model_distance,
    pairwise,
    simplex_point,
    simplex_weights,
)
from .simplex import regular_simplex, simplex_vertices

BOUNDARY_TOL = 1e-12


def barycentric_grid(parts, m):
    """All weight vectors with ``parts`` entries in {0, 1/m, ..., 1} summing to 1."""
    rows = []
    # stars and bars: choose parts-1 bar positions among m+parts-1 slots
    for bars in combinations(range(m + parts - 1), parts - 1):
        prev, counts = -1, []
        for b in bars:
            counts.append(b - prev - 1)
            prev = b
        counts.append(m + parts - 2 - prev)
        rows.append(counts)
    return np.asarray(rows, dtype=float) / m


def _grid_resolution(parts, target):
    m = 1
    while comb(m + parts - 1, parts - 1) < target:
        m += 1
    return m


@lru_cache(maxsize=32)
def boundary_grid(n, k, R=1.0, per_facet=1000):
    """Boundary candidates of the simplex: ``(points, facet_ids, weights, m)``.

    Each of the n+1 facets gets a barycentric grid of about ``per_facet``
    points. ``weights`` are in facet-local order (facet i omits vertex i).
    """
    k = flat(k)
    verts = simplex_vertices(n, k, R)
    m = _grid_resolution(n, per_facet)
    W = barycentric_grid(n, m)
    pts, ids = [], []
    for i in range(n + 1):
        facet = np.delete(verts, i, axis=0)
        pts.append(simplex_point(k, facet, W))
        ids.append(np.full(len(W), i))
    points = np.vstack(pts)
    points.setflags(write=False)
    return points, np.concatenate(ids), np.tile(W, (n + 1, 1)), m


def on_boundary(k, vertices, x, tol=BOUNDARY_TOL):
    """True where ``x`` has a vanishing simplex weight."""
    w = simplex_weights(k, vertices, x)
    w = w / np.sum(w, axis=-1, keepdims=True)
    return np.min(w, axis=-1) <= tol


def _refine(k, facet, w, p, q, step, min_step):
    """Coordinate descent on the facet weights, moving mass between vertex pairs."""

    def cost(weights):
        b = simplex_point(k, facet, weights)
        return float(model_distance(k, p, b) + model_distance(k, b, q))

    best = cost(w)
    pairs = list(combinations(range(len(w)), 2))
    while step >= min_step:
        improved = False
        for a, b in pairs:
            for src, dst in ((a, b), (b, a)):
                delta = min(step, w[src])
                if delta <= 0:
                    continue
                trial = w.copy()
                trial[src] -= delta
                trial[dst] += delta
                c = cost(trial)
                if c < best:
                    best, w, improved = c, trial, True
        if not improved:
            step /= 2.0
    return best


def double_distance(p, q, per_facet=1000, min_step=1e-7, n_starts=3):
    """Distance between two points of the doubled simplex.

    Cross-copy distances take the best boundary grid candidates and refine
    each by coordinate descent down to weight steps below ``min_step``.
    """
    if p.spec != q.spec or p.spec.kind != "double_simplex":
        raise SpecMismatchError("double_distance needs two points of the same double simplex")
    spec = p.spec
    k = spec.k
    verts = simplex_vertices(spec.n, k, spec.R)
    x, y = p.coords, q.coords
    if p.copy == q.copy or on_boundary(k, verts, x) or on_boundary(k, verts, y):
        return float(model_distance(k, x, y))
    pts, ids, W, m = boundary_grid(spec.n, k, spec.R, per_facet)
    costs = model_distance(k, x, pts) + model_distance(k, pts, y)
    order = np.argsort(costs, kind="stable")
    best = float(costs[order[0]])
    seen = set()
    for idx in order:
        key = (int(ids[idx]),) + tuple(np.round(W[idx] * m).astype(int))
        if key in seen:
            continue
        seen.add(key)
        facet = np.delete(verts, ids[idx], axis=0)
        best = min(best, _refine(k, facet, W[idx].copy(), x, y, 1.0 / m, min_step))
        if len(seen) >= n_starts:
            break
    return best


def min_plus(A, B, budget=2 ** 23):
    """C[i, j] = min_b A[i, b] + B[b, j], chunked to bound memory."""
    n_rows = A.shape[0]
    out = np.empty((n_rows, B.shape[1]))
    chunk = max(1, budget // max(1, A.shape[1] * B.shape[1]))
    for start in range(0, n_rows, chunk):
        a = A[start:start + chunk]
        out[start:start + chunk] = (a[:, :, None] + B[None, :, :]).min(axis=1)
    return out


def double_distance_matrix(spec, coords, copies, per_facet=1000):
    """Distance matrix of points of a doubled simplex.

    Cross-copy distances are minimized over the boundary grid only; over a
    fixed finite boundary set the result is itself an exact metric, and it
    overestimates the true distance by at most the grid resolution error.
    """
    k = spec.k
    coords = np.asarray(coords, dtype=float)
    copies = np.asarray(copies, dtype=int)
    verts = simplex_vertices(spec.n, k, spec.R)
    D = pairwise(lambda a, b: model_distance(k, a, b), coords)
    bnd = on_boundary(k, verts, coords)
    c0 = np.flatnonzero((copies == 0) & ~bnd)
    c1 = np.flatnonzero((copies == 1) & ~bnd)
    if c0.size and c1.size:
        # sampled boundary points join the candidates so the result stays a metric
        pts = np.vstack([boundary_grid(spec.n, k, spec.R, per_facet)[0], coords[bnd]])
        A = pairwise(lambda a, b: model_distance(k, a, b), coords[c0], pts)
        B = pairwise(lambda a, b: model_distance(k, a, b), pts, coords[c1])
        cross = min_plus(A, B)
        D[np.ix_(c0, c1)] = cross
        D[np.ix_(c1, c0)] = cross.T
    np.fill_diagonal(D, 0.0)
    return D


def double_grid_points(n, k, m, R=1.0):
    """Barycentric grid of the double: boundary nodes once, interior nodes twice."""
    spec = ModelSpaceSpec("double_simplex", n, k, R)
    k = spec.k
    verts = simplex_vertices(n, k, R)
    W = barycentric_grid(n + 1, m)
    coords = simplex_point(k, verts, W)
    interior = W.min(axis=1) > 0
    coords = np.vstack([coords, coords[interior]])
    copies = np.r_[np.zeros(len(W), dtype=int), np.ones(int(interior.sum()), dtype=int)]
    return spec, coords, copies


def double_radius(n, k, m=None, per_facet=1000):
    """rad of the doubled simplex, from a barycentric grid sample.

    Returns ``(radius, tol)`` with ``tol`` the grid spacing (edge / m). The
    grid resolution ``m`` defaults to a multiple of n+1 so that the simplex
    centre is a grid node in both copies.
    """
    geom = regular_simplex(n, k)
    if m is None:
        m = (n + 1) * max(1, round(24 / (n + 1))) if n <= 3 else (n + 1) * 2
    spec, coords, copies = double_grid_points(n, k, m)
    D = double_distance_matrix(spec, coords, copies, per_facet)
    radius = float(D.max(axis=1).min())
    return radius, geom.edge_length / m


def double_points(spec, coords, copies):
    return [ModelPoint(spec, c, int(t)) for c, t in zip(coords, copies)]
