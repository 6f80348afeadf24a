"""Triangles in the model planes S_k^2."""

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, NotRealizableError
from .models import flat, model_diameter, model_distance, sn

_SLACK = 1e-12


def _third_side(k, b, c, hav):
    """Side opposite an angle whose haversine sin^2(angle/2) is ``hav``.

    Haversine form of the law of cosines: with s = sqrt|k|,
    sin^2(s a/2) = sin^2(s (b-c)/2) + sin(s b) sin(s c) hav  (sinh for k < 0),
    and a^2 = (b-c)^2 + 4 b c hav at k = 0. No cancellation as k -> 0.
    """
    k = flat(k)
    if k == 0:
        return float(np.sqrt(max((b - c) ** 2 + 4.0 * b * c * hav, 0.0)))
    s = np.sqrt(abs(k))
    if k > 0:
        val = np.sin(s * (b - c) / 2) ** 2 + np.sin(s * b) * np.sin(s * c) * hav
        return float(2.0 * np.arcsin(np.sqrt(min(max(val, 0.0), 1.0))) / s)
    val = np.sinh(s * (b - c) / 2) ** 2 + np.sinh(s * b) * np.sinh(s * c) * hav
    return float(2.0 * np.arcsinh(np.sqrt(max(val, 0.0))) / s)


def law_of_cosines(k, b, c, alpha):
    """Third side of the curvature-k triangle with sides b, c enclosing angle alpha."""
    if b < 0 or c < 0:
        raise DomainError(f"side lengths must be non-negative, got b={b}, c={c}")
    if not 0 <= alpha <= np.pi:
        raise DomainError(f"angle must lie in [0, pi], got {alpha}")
    if k > 0 and max(b, c) > model_diameter(k) + _SLACK:
        raise DomainError(f"sides must not exceed pi/sqrt(k) = {model_diameter(k)}")
    return _third_side(k, float(b), float(c), np.sin(alpha / 2.0) ** 2)


def _half_angle_hav(k, a, b, c):
    """sin^2(gamma/2) for the angle gamma between sides a and b, opposite c."""
    if a == 0 or b == 0:
        return 0.0
    sigma = (a + b + c) / 2.0
    num = sn(k, sigma - a) * sn(k, sigma - b)
    den = sn(k, a) * sn(k, b)
    return float(num / den)


@dataclass(frozen=True, eq=False)
class ComparisonTriangle:
    """A triangle (p0, p1, p2) in S_k^2 with prescribed side lengths.

    The realization puts p1 at the base point and p2 on the first axis, so
    the side c0 = [p1, p2] is ``t -> exp(t * d12 * e1)``. ``points`` holds
    ambient coordinates (R^3 for k != 0, R^2 for k = 0).
    """

    k: float
    d01: float
    d02: float
    d12: float
    angle_at_p1: float
    points: tuple

    @property
    def hav_at_p1(self):
        return float(np.sin(self.angle_at_p1 / 2.0) ** 2)


def _plane_point(k, rho, theta):
    """Point at distance ``rho`` from the base point in direction ``theta``."""
    u = np.array([np.cos(theta), np.sin(theta)])
    if k == 0:
        return rho * u
    s = np.sqrt(abs(k))
    return np.concatenate([[float(np.cos(s * rho) if k > 0 else np.cosh(s * rho)) / s],
                           float(sn(k, rho)) * u])


def comparison_triangle(k, d01, d02, d12):
    """Realize the side lengths as a triangle in S_k^2.

    Raises NotRealizableError if the lengths violate the triangle
    inequality or, for k > 0, if a side reaches pi/sqrt(k) or the
    perimeter exceeds 2 pi/sqrt(k).
    """
    k = flat(k)
    sides = (float(d01), float(d02), float(d12))
    if min(sides) < 0:
        raise NotRealizableError(f"negative side length in {sides}")
    scale = max(max(sides), 1.0)
    a, c, b = sides  # a = d01, b = d12 meet at p1; c = d02 is opposite p1
    if a > b + c + _SLACK * scale or b > a + c + _SLACK * scale or c > a + b + _SLACK * scale:
        raise NotRealizableError(f"sides {sides} violate the triangle inequality")
    if k > 0:
        D = model_diameter(k)
        if max(sides) >= D:
            raise NotRealizableError(f"sides must be < pi/sqrt(k) = {D}")
        if sum(sides) > 2 * D + _SLACK * scale:
            raise NotRealizableError(f"perimeter exceeds 2 pi/sqrt(k) = {2 * D}")
    hav = min(max(_half_angle_hav(k, a, b, c), 0.0), 1.0)
    gamma = 2.0 * np.arcsin(np.sqrt(hav))
    pts = (_plane_point(k, a, gamma), _plane_point(k, 0.0, 0.0), _plane_point(k, b, 0.0))
    return ComparisonTriangle(float(k), a, c, b, float(gamma), pts)


def comparison_distance(tri, t):
    """Distance from p0-bar to the point at arc fraction t along [p1-bar, p2-bar]."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    if t == 0.0:
        return tri.d01
    if t == 1.0:
        return tri.d02
    return _third_side(tri.k, tri.d01, t * tri.d12, tri.hav_at_p1)


def realized_side_lengths(tri):
    """Pairwise distances of the realization (d01, d02, d12), for checking."""
    p0, p1, p2 = tri.points
    return tuple(float(model_distance(tri.k, x, y)) for x, y in ((p0, p1), (p0, p2), (p1, p2)))
