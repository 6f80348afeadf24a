"""Seeded samplers turning model spaces into finite metric spaces."""

import numpy as np

from ..metric import FiniteMetricSpace, validate_metric
from .double import double_distance_matrix, on_boundary
from .models import (
    ModelPoint,
    ModelSpaceSpec,
    cs,
    exp_origin,
    model_distance,
    normalize,
    pairwise,
    projective_distance,
    sn,
)
from .simplex import inradius, simplex_directions, simplex_vertices

BOUNDARY_FRACTION = 0.25


def _directions(rng, size, dim):
    g = rng.standard_normal((size, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _radial(rng, size, k, R, dim):
    """Radii in [0, R] with density proportional to sn_k(r)^(dim-1), by rejection."""
    if dim == 1:
        return rng.uniform(0.0, R, size)
    peak = float(sn(k, min(R, np.pi / (2 * np.sqrt(k))) if k > 0 else R))
    out = np.empty(0)
    while out.size < size:
        r = rng.uniform(0.0, R, 2 * size)
        u = rng.uniform(0.0, 1.0, 2 * size)
        keep = u <= (sn(k, r) / peak) ** (dim - 1)
        out = np.concatenate([out, r[keep]])
    return out[:size]


def sample_ball(rng, size, n, k, R):
    """Uniform (Riemannian volume) points of the closed R-ball about the base point."""
    r = _radial(rng, size, k, R, n)
    return exp_origin(k, r[:, None] * _directions(rng, size, n))


def sample_simplex(rng, size, n, k, R=1.0):
    """Uniform points of the regular simplex, by rejection from its circumscribed ball."""
    verts = simplex_vertices(n, k, R)
    out = np.empty((0, verts.shape[1]))
    while out.shape[0] < size:
        cand = sample_ball(rng, 2 * size, n, k, R)
        w = np.linalg.solve(_weight_system(k, verts), _weight_rhs(k, cand))
        out = np.vstack([out, cand[np.all(w >= 0, axis=0)]])
    return out[:size]


def _weight_system(k, verts):
    return np.vstack([verts.T, np.ones(len(verts))]) if k == 0 else verts.T


def _weight_rhs(k, x):
    return np.vstack([x.T, np.ones(x.shape[0])]) if k == 0 else x.T


def sample_simplex_boundary(rng, size, n, k, R=1.0):
    """Uniform points of the simplex boundary.

    Facets are congruent, so one is picked uniformly; inside it, points are
    drawn uniformly from the facet's circumscribed (n-1)-ball (centred at
    the foot of the perpendicular from the simplex centre) and rejected
    outside the facet.
    """
    if R != 1.0:
        raise NotImplementedError("boundary sampling is implemented for circumradius 1")
    U = simplex_directions(n)
    verts = simplex_vertices(n, k)
    r = inradius(n, k, strict=False, check=False)
    facet_ids = rng.integers(0, n + 1, size)
    out = np.empty((size, verts.shape[1]))
    for i in range(n + 1):
        want = int(np.sum(facet_ids == i))
        if not want:
            continue
        foot = exp_origin(k, -r * U[i])
        basis = np.linalg.svd(np.eye(n) - np.outer(U[i], U[i]))[0][:, : n - 1]
        facet = np.delete(verts, i, axis=0)
        rho_max = float(model_distance(k, foot, facet[0]))
        got = np.empty((0, verts.shape[1]))
        while got.shape[0] < want:
            m = 2 * want
            rho = _radial(rng, m, k, rho_max, n - 1)
            tangent = _directions(rng, m, n - 1) @ basis.T
            if k != 0:
                tangent = np.hstack([np.zeros((m, 1)), tangent])
            pts = normalize(k, cs(k, rho)[:, None] * foot + sn(k, rho)[:, None] * tangent)
            w = np.linalg.solve(_weight_system(k, verts), _weight_rhs(k, pts))
            w = np.delete(w, i, axis=0)
            got = np.vstack([got, pts[np.all(w >= 0, axis=0)]])
        out[facet_ids == i] = got[:want]
    return out


def sample_points(spec, N, seed):
    """Draw ``N`` points of ``spec``: returns ``(coords, copies)``."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    rng = np.random.default_rng(seed)
    n, k, R = spec.n, spec.k, spec.R
    copies = np.zeros(N, dtype=int)
    if spec.kind in ("sphere", "projective"):
        coords = normalize(k, rng.standard_normal((N, n + 1)))
    elif spec.kind == "ball":
        coords = sample_ball(rng, N, n, k, R)
    elif spec.kind == "interval":
        if N == 1:
            coords = np.zeros((1, 1))
        else:
            grid = np.linspace(0.0, R, N)
            h = R / (N - 1)
            grid[1:-1] += rng.uniform(-h / 4, h / 4, N - 2)
            coords = grid[:, None]
    elif spec.kind == "simplex":
        coords = sample_simplex(rng, N, n, k, R)
    else:
        n_bnd = int(round(BOUNDARY_FRACTION * N))
        inner = sample_simplex(rng, N - n_bnd, n, k, R)
        bnd = sample_simplex_boundary(rng, n_bnd, n, k, R) if n_bnd else inner[:0]
        coords = np.vstack([inner, bnd])
        copies[: N - n_bnd] = rng.integers(0, 2, N - n_bnd)
    return coords, copies


def model_distance_matrix(spec, coords, copies=None):
    k = spec.k
    if spec.kind == "interval":
        x = np.asarray(coords, dtype=float)[:, 0]
        return np.abs(x[:, None] - x[None, :])
    if spec.kind == "projective":
        D = pairwise(lambda a, b: projective_distance(k, a, b), coords)
    elif spec.kind == "double_simplex":
        if copies is None:
            copies = np.zeros(len(coords), dtype=int)
        D = double_distance_matrix(spec, coords, copies)
    else:
        D = pairwise(lambda a, b: model_distance(k, a, b), coords)
    np.fill_diagonal(D, 0.0)
    return np.minimum(D, D.T)


def model_metric_space(spec, coords, copies=None, provenance=None, tol=None, validate=True):
    """FiniteMetricSpace on the given model points, with exact model distances."""
    coords = np.asarray(coords, dtype=float)
    if copies is None:
        copies = np.zeros(len(coords), dtype=int)
    if spec.kind == "double_simplex":
        # boundary points belong to both copies; tag them copy 0
        verts = simplex_vertices(spec.n, spec.k, spec.R)
        copies = np.where(on_boundary(spec.k, verts, coords), 0, copies)
    D = model_distance_matrix(spec, coords, copies)
    points = tuple(ModelPoint(spec, c, int(t)) for c, t in zip(coords, copies))
    prov = provenance or {"source": "model", "spec": spec.to_dict()}
    if validate:
        return validate_metric(D, tol, provenance=prov, points=points)
    D.setflags(write=False)
    return FiniteMetricSpace(D, None, prov, points)


def sample_model_space(spec, N, seed, tol=None, validate=True):
    """N seeded random points of ``spec`` as a validated FiniteMetricSpace.

    Spheres use normalized Gaussian vectors, balls and simplices rejection
    sampling, intervals a jittered grid with both endpoints included. A
    quarter of a double simplex sample lies on the glued boundary; the rest
    is split between the two copies at random.
    """
    if not isinstance(spec, ModelSpaceSpec):
        spec = ModelSpaceSpec.from_dict(spec)
    coords, copies = sample_points(spec, int(N), seed)
    prov = {"source": "sampled", "spec": spec.to_dict(), "N": int(N), "seed": seed}
    return model_metric_space(spec, coords, copies, prov, tol, validate)
