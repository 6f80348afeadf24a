"""Continuous refinement of configurations on model spaces."""

import math
from itertools import combinations

import numpy as np

from .._validation import check_objective
from ..errors import UnsupportedSpecError
from ..spaceform.models import (
    ModelPoint,
    exp_map,
    exp_origin,
    minkowski,
    model_distance,
    origin,
    project_tangent,
    projective_distance,
)
from .config import Configuration

SUPPORTED = ("sphere", "ball", "interval", "projective")


def _distance_fn(spec):
    k = spec.k
    if spec.kind == "interval":
        return lambda x, y: float(abs(x[0] - y[0]))
    if spec.kind == "projective":
        return lambda x, y: float(projective_distance(k, x, y))
    return lambda x, y: float(model_distance(k, x, y))


def _objective(pts, dist, objective):
    d = [dist(pts[a], pts[b]) for a, b in combinations(range(len(pts)), 2)]
    if objective == "average":
        return math.fsum(d) / math.comb(len(pts), 2)
    return min(d)


def _tangent_directions(spec, x):
    """Unit tangent directions at x obtained by projecting the ambient axes."""
    if spec.kind == "interval":
        return [np.array([1.0]), np.array([-1.0])]
    k = spec.k
    out = []
    for a in range(x.size):
        e = np.zeros(x.size)
        e[a] = 1.0
        v = project_tangent(k, x, e)
        norm2 = minkowski(v, v) if k < 0 else float(np.dot(v, v))
        if norm2 > 1e-12:
            v = v / np.sqrt(norm2)
            out.extend([v, -v])
    return out


def _clamp(spec, x):
    """Pull a point back into the ball or interval along the radial geodesic."""
    if spec.kind == "interval":
        return np.clip(x, 0.0, spec.R)
    if spec.kind != "ball":
        return x
    k = spec.k
    o = origin(k, spec.n)
    r = float(model_distance(k, o, x))
    if r <= spec.R:
        return x
    w = x if k == 0 else x[1:]
    return exp_origin(k, spec.R * w / np.linalg.norm(w))


def _move(spec, x, v):
    if spec.kind == "interval":
        return _clamp(spec, x + v)
    return _clamp(spec, exp_map(spec.k, x, v))


def continuous_refine(spec, start, objective="average", min_step=1e-8, initial_step=None,
                      max_sweeps=100_000):
    """Pattern-search ascent moving one point at a time.

    Each point tries steps of the current size along the tangent projections
    of the ambient coordinate axes; an improving move is taken immediately.
    When a full sweep finds no improvement the step is halved, until it
    drops below ``min_step``. The score never decreases.
    """
    check_objective(objective)
    if spec.kind not in SUPPORTED:
        raise UnsupportedSpecError(
            f"continuous refinement supports {SUPPORTED}, not {spec.kind!r}")
    if isinstance(start, Configuration):
        start = start.points
    pts = [np.array(getattr(p, "coords", p), dtype=float) for p in start]
    if len(pts) < 2:
        raise ValueError("need at least two points")
    dist = _distance_fn(spec)
    value = _objective(pts, dist, objective)
    if initial_step is None:
        scale = spec.R if spec.kind in ("interval", "ball") else np.pi / np.sqrt(spec.k)
        initial_step = 0.25 * scale
    step = initial_step
    sweeps = 0
    while step >= min_step and sweeps < max_sweeps:
        sweeps += 1
        improved = False
        for i in range(len(pts)):
            for v in _tangent_directions(spec, pts[i]):
                trial = list(pts)
                trial[i] = _move(spec, pts[i], step * v)
                t_val = _objective(trial, dist, objective)
                if t_val > value:
                    pts, value, improved = trial, t_val, True
                    break
        if not improved:
            step /= 2.0
    points = tuple(ModelPoint(spec, p) for p in pts)
    return Configuration((), objective, value, "continuous", False, points)
