"""Ambient models of the constant-curvature space forms.

Curvature ``k > 0`` lives on the sphere of radius ``1/sqrt(k)`` in R^(n+1),
``k = 0`` in Cartesian R^n, and ``k < 0`` on the upper sheet of the
hyperboloid ``<x, x>_M = 1/k`` in Minkowski space R^(n,1) with signature
(-, +, ..., +). The base point of every model (the centre of balls and
simplices) is ``e_0`` scaled onto the model, or the origin when ``k = 0``.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, SpecMismatchError

KINDS = ("sphere", "ball", "projective", "interval", "simplex", "double_simplex")

#: Upper curvature bound (for R = 1) of the unique maximal inscribed simplex.
SIMPLEX_K_MAX = (np.pi / 4) ** 2

#: Curvatures below this in magnitude are treated as flat. Ambient models of
#: radius 1/sqrt|k| lose about |k|^(-1/2) ulps, while the flat approximation
#: is off by O(|k|) at unit scale.
FLAT_K = 1e-10


def flat(k):
    """``k`` as a float, with |k| < FLAT_K replaced by 0."""
    k = float(k)
    return 0.0 if abs(k) < FLAT_K else k


def sn(k, t):
    """Generalized sine: sin(sqrt(k) t)/sqrt(k), t, or sinh(sqrt(-k) t)/sqrt(-k)."""
    k = flat(k)
    t = np.asarray(t, dtype=float)
    if k > 0:
        s = np.sqrt(k)
        return np.sin(s * t) / s
    if k < 0:
        s = np.sqrt(-k)
        return np.sinh(s * t) / s
    return t


def cs(k, t):
    """Generalized cosine: cos(sqrt(k) t), 1, or cosh(sqrt(-k) t)."""
    k = flat(k)
    t = np.asarray(t, dtype=float)
    if k > 0:
        return np.cos(np.sqrt(k) * t)
    if k < 0:
        return np.cosh(np.sqrt(-k) * t)
    return np.ones_like(t)


def tn(k, t):
    return sn(k, t) / cs(k, t)


def atn(k, y):
    """Inverse of :func:`tn`."""
    k = flat(k)
    y = np.asarray(y, dtype=float)
    if k > 0:
        s = np.sqrt(k)
        return np.arctan(s * y) / s
    if k < 0:
        s = np.sqrt(-k)
        return np.arctanh(s * y) / s
    return y


def model_diameter(k):
    """pi/sqrt(k) for k > 0, infinity otherwise."""
    return np.pi / np.sqrt(k) if k > 0 else np.inf


@dataclass(frozen=True)
class ModelSpaceSpec:
    """Which model space, in which dimension and curvature.

    ``R`` is the ball or simplex circumradius, and the length ``L`` for
    ``kind="interval"``.
    """

    kind: str
    n: int
    k: float = 0.0
    R: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"dimension n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "k", flat(self.k))
        object.__setattr__(self, "R", float(self.R))
        if not (np.isfinite(self.k) and np.isfinite(self.R)) or self.R <= 0:
            raise DomainError(f"need finite k and positive R, got k={self.k}, R={self.R}")
        if self.kind in ("sphere", "projective") and self.k <= 0:
            raise DomainError(f"{self.kind} requires k > 0, got {self.k}")
        if self.kind == "ball" and self.k > 0 and self.R > np.pi / np.sqrt(self.k) + 1e-15:
            raise DomainError(f"ball radius R={self.R} exceeds pi/sqrt(k)")
        if self.kind in ("simplex", "double_simplex") and self.k > 0 \
                and np.sqrt(self.k) * self.R >= np.pi / 4:
            raise DomainError(
                f"simplex needs sqrt(k)*R < pi/4 (k < {SIMPLEX_K_MAX:.6f} when R = 1), "
                f"got k={self.k}, R={self.R}")

    @property
    def ambient_dim(self):
        if self.kind == "interval":
            return 1
        return self.n + 1 if self.k != 0 else self.n

    def to_dict(self):
        return {"kind": self.kind, "n": self.n, "k": self.k, "R": self.R}

    @classmethod
    def from_dict(cls, obj):
        return cls(obj["kind"], obj["n"], obj.get("k", 0.0), obj.get("R", 1.0))


@dataclass(frozen=True, eq=False)
class ModelPoint:
    """A point of a model space given by its ambient coordinates."""

    spec: ModelSpaceSpec
    coords: np.ndarray
    copy: int = 0

    def __post_init__(self):
        c = np.array(self.coords, dtype=float)
        if c.shape != (self.spec.ambient_dim,):
            raise DomainError(
                f"expected {self.spec.ambient_dim} coordinates for {self.spec}, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)
        if self.copy not in (0, 1):
            raise DomainError("copy tag must be 0 or 1")

    def constraint_defect(self):
        """How far the coordinates are from the model's defining equation."""
        k, x = self.spec.k, self.coords
        if self.spec.kind == "interval":
            return max(0.0, -x[0], x[0] - self.spec.R)
        if k > 0:
            return abs(np.dot(x, x) - 1.0 / k)
        if k < 0:
            return abs(minkowski(x, x) - 1.0 / k)
        return 0.0


def minkowski(x, y):
    """Lorentzian inner product with signature (-, +, ..., +) on the last axis."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return -x[..., 0] * y[..., 0] + np.sum(x[..., 1:] * y[..., 1:], axis=-1)


def origin(k, n):
    """Base point of the curvature-k model of dimension n."""
    k = flat(k)
    if k == 0:
        return np.zeros(n)
    p = np.zeros(n + 1)
    p[0] = 1.0 / np.sqrt(abs(k))
    return p


def normalize(k, p):
    """Radially project ambient vectors (last axis) onto the model."""
    k = flat(k)
    p = np.asarray(p, dtype=float)
    if k > 0:
        return p / (np.linalg.norm(p, axis=-1, keepdims=True) * np.sqrt(k))
    if k < 0:
        q = minkowski(p, p)[..., None]
        return p * np.sqrt((1.0 / k) / q)
    return p


def exp_origin(k, w):
    """Exponential map at the base point; ``w`` has shape (..., n)."""
    k = flat(k)
    w = np.asarray(w, dtype=float)
    if k == 0:
        return w.copy()
    r = np.linalg.norm(w, axis=-1, keepdims=True)
    s = np.sqrt(abs(k))
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(r > 0, w / np.where(r > 0, r, 1.0), 0.0)
    head = cs(k, r) / s
    return np.concatenate([head, sn(k, r) * unit], axis=-1)


def exp_map(k, p, v):
    """Exponential map at ``p`` of the tangent vector ``v`` (single vectors)."""
    k = flat(k)
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    if k == 0:
        return p + v
    norm2 = minkowski(v, v) if k < 0 else float(np.dot(v, v))
    r = np.sqrt(max(norm2, 0.0))
    if r == 0:
        return p.copy()
    return normalize(k, cs(k, r) * p + sn(k, r) * v / r)


def project_tangent(k, p, v):
    """Component of ``v`` tangent to the model at ``p``."""
    k = flat(k)
    if k == 0:
        return np.asarray(v, dtype=float)
    if k > 0:
        return v - np.dot(v, p) * k * p
    return v - minkowski(v, p) * k * p


def model_distance(k, x, y):
    """Geodesic distance in the curvature-k model, broadcasting over the last axis.

    Uses chord-based half-angle forms, which stay accurate for nearby and
    (for k > 0) for nearly antipodal points.
    """
    k = flat(k)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    diff = x - y
    if k > 0:
        s = np.sqrt(k)
        a = np.linalg.norm(diff, axis=-1)
        b = np.linalg.norm(x + y, axis=-1)
        return 2.0 * np.arctan2(a, b) / s
    if k < 0:
        s = np.sqrt(-k)
        chord2 = np.maximum(minkowski(diff, diff), 0.0)
        return 2.0 * np.arcsinh(s * np.sqrt(chord2) / 2.0) / s
    return np.linalg.norm(diff, axis=-1)


def projective_distance(k, x, y):
    """Quotient distance min(d, pi/sqrt(k) - d) on the real projective space."""
    k = flat(k)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = np.sqrt(k)
    a = np.linalg.norm(x - y, axis=-1)
    b = np.linalg.norm(x + y, axis=-1)
    return 2.0 * np.arctan2(np.minimum(a, b), np.maximum(a, b)) / s


def pairwise(fn, X, Y=None, chunk=256):
    """Dense matrix ``fn(X[i], Y[j])`` computed in row chunks."""
    X = np.asarray(X, dtype=float)
    Y = X if Y is None else np.asarray(Y, dtype=float)
    out = np.empty((X.shape[0], Y.shape[0]))
    for start in range(0, X.shape[0], chunk):
        block = X[start:start + chunk]
        out[start:start + chunk] = fn(block[:, None, :], Y[None, :, :])
    return out


def geodesic_point(k, x, y, t):
    """Point at fraction ``t`` of the way from ``x`` to ``y`` along the geodesic."""
    k = flat(k)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if k == 0:
        return (1.0 - t) * x + t * y
    theta = np.sqrt(abs(k)) * float(model_distance(k, x, y))
    if theta < 1e-12:
        return normalize(k, (1.0 - t) * x + t * y)
    if k > 0:
        w0 = np.sin((1.0 - t) * theta) / np.sin(theta)
        w1 = np.sin(t * theta) / np.sin(theta)
    else:
        w0 = np.sinh((1.0 - t) * theta) / np.sinh(theta)
        w1 = np.sinh(t * theta) / np.sinh(theta)
    return normalize(k, w0 * x + w1 * y)


def simplex_weights(k, vertices, x):
    """Weights ``w`` with ``x`` proportional to ``sum w_i v_i``.

    For k = 0 these are barycentric coordinates; for k != 0 they are the
    coefficients of ``x`` in the vertex basis. ``x`` lies in the geodesic
    simplex iff every weight is non-negative.
    """
    k = flat(k)
    V = np.asarray(vertices, dtype=float)
    x = np.asarray(x, dtype=float)
    if k == 0:
        A = np.vstack([V.T, np.ones(V.shape[0])])
        rhs = np.concatenate([x.T, np.ones((1,) + x.shape[:-1])], axis=0) \
            if x.ndim > 1 else np.append(x, 1.0)
        return np.linalg.solve(A, rhs).T
    return np.linalg.solve(V.T, x.T).T


def simplex_point(k, vertices, weights):
    """Point of the geodesic simplex with the given non-negative weights."""
    k = flat(k)
    w = np.asarray(weights, dtype=float)
    w = w / w.sum(axis=-1, keepdims=True)
    return normalize(k, w @ np.asarray(vertices, dtype=float))


def sf_distance(p, q):
    """Geodesic distance between two points of the same model space."""
    if p.spec != q.spec:
        raise SpecMismatchError(f"points live in different spaces: {p.spec} vs {q.spec}")
    spec = p.spec
    if spec.kind == "interval":
        return float(abs(p.coords[0] - q.coords[0]))
    if spec.kind == "projective":
        return float(projective_distance(spec.k, p.coords, q.coords))
    if spec.kind == "double_simplex":
        from .double import double_distance
        return double_distance(p, q)
    return float(model_distance(spec.k, p.coords, q.coords))
