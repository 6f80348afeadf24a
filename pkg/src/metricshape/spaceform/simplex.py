"""The regular simplex inscribed in a unit ball of S_k^n, its inradius, and k(n)."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import helmert
from scipy.optimize import minimize

from ..errors import BracketFailureError, DomainError
from .models import (
    SIMPLEX_K_MAX,
    ModelPoint,
    ModelSpaceSpec,
    exp_origin,
    flat,
    model_distance,
    normalize,
    origin,
    simplex_weights,
)
from .trig import law_of_cosines

#: r(n, .) is defined on (-inf, (pi/2)^2); beyond it the unit ball wraps.
INRADIUS_K_MAX = (np.pi / 2) ** 2


@dataclass(frozen=True, eq=False)
class SimplexGeometry:
    n: int
    k: float
    circumradius: float
    center: ModelPoint
    vertices: tuple
    edge_length: float
    inradius: float

    @property
    def vertex_coords(self):
        return np.array([v.coords for v in self.vertices])


def simplex_directions(n):
    """n+1 unit vectors in R^n with pairwise inner product -1/n."""
    H = helmert(n + 1)  # n x (n+1), orthonormal rows orthogonal to the ones vector
    U = H.T
    return U / np.linalg.norm(U, axis=1, keepdims=True)


def _check_domain(n, k, kmax):
    if int(n) != n or n < 2:
        raise DomainError(f"simplex dimension must be an integer >= 2, got {n!r}")
    if not np.isfinite(k) or k >= kmax:
        raise DomainError(f"curvature k={k} outside (-inf, {kmax:.6f})")


def simplex_vertices(n, k, R=1.0):
    """Ambient coordinates of the vertices of the regular simplex with circumradius R."""
    k = flat(k)
    return exp_origin(k, R * simplex_directions(n))


def _facet_foot(k, center, facet):
    """Closest point to ``center`` on the totally geodesic span of ``facet``."""
    if k == 0:
        v0 = facet[0]
        A = (facet[1:] - v0).T
        coef, *_ = np.linalg.lstsq(A, center - v0, rcond=None)
        return v0 + A @ coef
    V = facet.T  # columns span the hyperplane through the ambient origin
    if k > 0:
        G = V.T @ V
        rhs = V.T @ center
    else:
        J = np.diag(np.r_[-1.0, np.ones(facet.shape[1] - 1)])
        G = V.T @ J @ V
        rhs = V.T @ J @ center
    return normalize(k, V @ np.linalg.solve(G, rhs))


def _inradius_projection(n, k):
    k = flat(k)
    verts = simplex_vertices(n, k)
    o = origin(k, n)
    foot = _facet_foot(k, o, verts[1:])
    return float(model_distance(k, o, foot))


def _inradius_minimization(n, k):
    """Independent route: minimize the centre-to-facet distance over the facet."""
    k = flat(k)
    verts = simplex_vertices(n, k)
    o = origin(k, n)
    facet = verts[1:]

    def dist(z):
        w = np.exp(z - z.max())
        w /= w.sum()
        return float(model_distance(k, o, normalize(k, w @ facet)))

    z0 = np.linspace(-0.7, 0.5, n)  # deliberately off the symmetric minimizer
    res = minimize(dist, z0, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-15, "maxiter": 20000})
    return float(res.fun)


def inradius(n, k, strict=True, check=True):
    """r(n, k): inradius of the regular n-simplex with circumradius 1 in S_k^n.

    ``strict`` enforces the uniqueness bound k < (pi/4)^2; with
    ``strict=False`` the full domain k < (pi/2)^2 is accepted. ``check``
    cross-checks the projection value against direct minimization.
    """
    _check_domain(n, k, SIMPLEX_K_MAX if strict else INRADIUS_K_MAX)
    r = _inradius_projection(n, k)
    if check:
        r_min = _inradius_minimization(n, k)
        if abs(r - r_min) > 1e-7:
            raise RuntimeError(
                f"inradius routes disagree for n={n}, k={k}: {r!r} vs {r_min!r}")
    return r


def regular_simplex(n, k, R=1.0):
    """The maximal regular n-simplex inscribed in the closed R-ball of S_k^n."""
    k = flat(k)
    if k > 0 and np.sqrt(k) * R >= np.pi / 4:
        raise DomainError(f"need sqrt(k)*R < pi/4, got k={k}, R={R}")
    _check_domain(n, k, np.inf if R != 1.0 else SIMPLEX_K_MAX)
    spec = ModelSpaceSpec("simplex", n, k, R)
    coords = simplex_vertices(n, k, R)
    edge = law_of_cosines(k, R, R, float(np.arccos(-1.0 / n)))
    r = inradius(n, k) if R == 1.0 else float(
        model_distance(k, origin(k, n), _facet_foot(k, origin(k, n), coords[1:])))
    return SimplexGeometry(
        n=n, k=float(k), circumradius=float(R),
        center=ModelPoint(spec, origin(k, n)),
        vertices=tuple(ModelPoint(spec, c) for c in coords),
        edge_length=edge, inradius=r,
    )


def solve_kn(n, tol_root=1e-10, bracket=(-10.0, INRADIUS_K_MAX - 1e-6)):
    """k(n): the curvature at which r(n, k) = 1/2, by bisection.

    r(n, .) is increasing, so the sign change of r - 1/2 is unique.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    lo, hi = map(float, bracket)

    def f(k):
        return _inradius_projection(n, k) - 0.5

    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo > 0 or f_hi < 0:
        raise BracketFailureError(
            f"r({n}, k) - 1/2 does not change sign on [{lo}, {hi}] "
            f"(values {f_lo:.3g}, {f_hi:.3g})")
    best, f_best = (lo, f_lo) if abs(f_lo) < abs(f_hi) else (hi, f_hi)
    while hi - lo > 1e-15 * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        f_mid = f(mid)
        if abs(f_mid) < abs(f_best):
            best, f_best = mid, f_mid
        if f_mid == 0.0:
            break
        if f_mid < 0:
            lo = mid
        else:
            hi = mid
    if abs(f_best) > tol_root:
        raise BracketFailureError(f"bisection stalled at residual {f_best:.3g} > {tol_root}")
    return best


def in_simplex(k, vertices, x, tol=1e-12):
    """Whether ambient point(s) ``x`` lie in the geodesic simplex."""
    w = simplex_weights(k, vertices, x)
    return np.all(w >= -tol, axis=-1)

