import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from metricshape import DomainError, NotRealizableError, validate_metric
from metricshape.errors import SpecMismatchError
from metricshape.spaceform import (
    ModelPoint,
    ModelSpaceSpec,
    comparison_distance,
    comparison_triangle,
    double_distance,
    double_radius,
    inradius,
    law_of_cosines,
    model_distance,
    projective_distance,
    regular_simplex,
    sample_model_space,
    sample_points,
    sf_distance,
    solve_kn,
)
from metricshape.spaceform.double import boundary_grid, double_grid_points
from metricshape.spaceform.models import atn, exp_origin, geodesic_point, origin, tn
from metricshape.spaceform.sampling import model_distance_matrix
from metricshape.spaceform.simplex import in_simplex, simplex_vertices
from metricshape.spaceform.trig import realized_side_lengths

mpmath.mp.dps = 40


def mp_law_of_cosines(k, b, c, alpha):
    """Textbook cosine rule in extended precision.

    The textbook form cancels catastrophically as k -> 0, so the working
    precision grows with |log10 k|.
    """
    extra = int(-math.log10(abs(k))) if 0 < abs(k) < 1 else 0
    with mpmath.workdps(40 + 2 * extra):
        return +_mp_law_of_cosines(k, b, c, alpha)


def _mp_law_of_cosines(k, b, c, alpha):
    k, b, c, alpha = (mpmath.mpf(v) for v in (k, b, c, alpha))
    if k == 0:
        return mpmath.sqrt(b * b + c * c - 2 * b * c * mpmath.cos(alpha))
    s = mpmath.sqrt(abs(k))
    if k > 0:
        v = mpmath.cos(s * b) * mpmath.cos(s * c) + mpmath.sin(s * b) * mpmath.sin(s * c) \
            * mpmath.cos(alpha)
        return mpmath.acos(min(v, 1)) / s
    v = mpmath.cosh(s * b) * mpmath.cosh(s * c) - mpmath.sinh(s * b) * mpmath.sinh(s * c) \
        * mpmath.cos(alpha)
    return mpmath.acosh(max(v, 1)) / s


def closed_form_inradius(n, k):
    """Right triangle centre / facet foot / vertex: tn(r) = tn(1) cos(angle) with cos = 1/n."""
    return float(atn(k, tn(k, 1.0) / n))


def closed_form_kn(n):
    return (2 * math.atan(math.sqrt(1 - 2 / n))) ** 2


# model spaces

@pytest.mark.parametrize("kind,k", [("sphere", -1.0), ("projective", 0.0)])
def test_spec_rejects_bad_curvature(kind, k):
    with pytest.raises(DomainError):
        ModelSpaceSpec(kind, 2, k)


def test_spec_rejects_large_simplex_and_ball():
    with pytest.raises(DomainError):
        ModelSpaceSpec("simplex", 2, 3.0)
    with pytest.raises(DomainError):
        ModelSpaceSpec("ball", 2, 1.0, 4.0)
    with pytest.raises(DomainError):
        ModelSpaceSpec("torus", 2)


def test_model_point_checks_coordinates():
    spec = ModelSpaceSpec("sphere", 2, 1.0)
    with pytest.raises(DomainError):
        ModelPoint(spec, [1.0, 0.0])
    assert ModelPoint(spec, [0.0, 0.0, 1.0]).constraint_defect() == 0.0


def test_sphere_distance_is_accurate_near_zero_and_pi():
    x = np.array([1.0, 0.0, 0.0])
    for eps in (1e-12, 1e-6, 1e-2):
        y = np.array([math.cos(eps), math.sin(eps), 0.0])
        assert model_distance(1.0, x, y) == pytest.approx(eps, rel=1e-9)
        assert model_distance(1.0, x, -y) == pytest.approx(math.pi - eps, rel=1e-12)


def test_sphere_of_curvature_four_has_diameter_half_pi():
    x = np.array([0.5, 0.0, 0.0])
    assert model_distance(4.0, x, -x) == pytest.approx(math.pi / 2)


def test_hyperbolic_distance_matches_mpmath():
    rng = np.random.default_rng(0)
    for k in (-1.0, -0.25, -4.0):
        W = rng.standard_normal((2, 2))
        x, y = exp_origin(k, W)
        s = mpmath.sqrt(-k)
        inner = -mpmath.mpf(x[0]) * y[0] + mpmath.mpf(x[1]) * y[1] + mpmath.mpf(x[2]) * y[2]
        expected = mpmath.acosh(k * inner) / s  # <x, x> = 1/k on the hyperboloid
        assert model_distance(k, x, y) == pytest.approx(float(expected), rel=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.floats(-3, 3), st.lists(st.floats(-1, 1), min_size=2, max_size=2))
def test_exp_origin_moves_by_the_tangent_length(k, w):
    w = np.array(w)
    assume(k <= 0 or np.linalg.norm(w) < math.pi / math.sqrt(k))
    x = exp_origin(k, w)
    assert model_distance(k, origin(k, 2), x) == pytest.approx(np.linalg.norm(w), abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([-1.0, 0.0, 0.5, 1.0]), st.floats(0, 1), st.integers(0, 10 ** 6))
def test_geodesic_point_splits_the_distance(k, t, seed):
    rng = np.random.default_rng(seed)
    x, y = exp_origin(k, rng.uniform(-0.7, 0.7, (2, 2)))
    d = model_distance(k, x, y)
    z = geodesic_point(k, x, y, t)
    assert model_distance(k, x, z) == pytest.approx(t * d, abs=1e-9)
    assert model_distance(k, z, y) == pytest.approx((1 - t) * d, abs=1e-9)


def test_projective_distance_is_at_most_half_pi():
    rng = np.random.default_rng(1)
    X = rng.standard_normal((200, 3))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    D = projective_distance(1.0, X[:, None, :], X[None, :, :])
    assert D.max() <= math.pi / 2 + 1e-12
    assert projective_distance(1.0, X[0], -X[0]) == 0.0


def test_sf_distance_dispatch_and_mismatch():
    a = ModelSpaceSpec("interval", 1, 0.0, 2.0)
    p, q = ModelPoint(a, [0.5]), ModelPoint(a, [2.0])
    assert sf_distance(p, q) == 1.5
    with pytest.raises(SpecMismatchError):
        sf_distance(p, ModelPoint(ModelSpaceSpec("interval", 1, 0.0, 3.0), [1.0]))


# triangles

def test_law_of_cosines_examples():
    assert law_of_cosines(0.0, 1, 1, math.pi / 3) == pytest.approx(1.0, abs=1e-12)
    assert law_of_cosines(1.0, math.pi / 2, math.pi / 2, math.pi / 2) == pytest.approx(math.pi / 2)
    expected = float(mp_law_of_cosines(-1, 1, 1, mpmath.pi / 3))
    assert expected == pytest.approx(1.116326919023212, abs=1e-15)
    assert law_of_cosines(-1.0, 1, 1, math.pi / 3) == pytest.approx(expected, abs=1e-14)


def test_law_of_cosines_domain():
    with pytest.raises(DomainError):
        law_of_cosines(0.0, -1, 1, 1.0)
    with pytest.raises(DomainError):
        law_of_cosines(0.0, 1, 1, 4.0)
    with pytest.raises(DomainError):
        law_of_cosines(1.0, 4.0, 1, 1.0)


@settings(max_examples=200, deadline=None)
@given(st.floats(-4, 4), st.floats(0.01, 1.5), st.floats(0.01, 1.5), st.floats(0, math.pi))
def test_law_of_cosines_matches_high_precision(k, b, c, alpha):
    assume(k <= 0 or max(b, c) < math.pi / math.sqrt(k))
    expected = float(mp_law_of_cosines(k, b, c, alpha))
    assert law_of_cosines(k, b, c, alpha) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_tiny_curvature_is_flat():
    assert ModelSpaceSpec("ball", 2, 1e-300).k == 0.0
    tri = comparison_triangle(1e-308, 1.0, 1.0, 1.0)
    assert np.allclose(realized_side_lengths(tri), 1.0)
    assert regular_simplex(2, -1e-11).edge_length == pytest.approx(math.sqrt(3), abs=1e-12)


def test_law_of_cosines_is_continuous_in_k():
    base = law_of_cosines(0.0, 0.7, 1.1, 1.3)
    for k in (1e-9, -1e-9, 1e-6, -1e-6):
        assert law_of_cosines(k, 0.7, 1.1, 1.3) == pytest.approx(base, abs=1e-5)


def test_comparison_triangle_examples():
    tri = comparison_triangle(1.0, math.pi / 2, math.pi / 2, math.pi / 2)
    assert tri.angle_at_p1 == pytest.approx(math.pi / 2)
    flat = comparison_triangle(0.0, 3.0, 5.0, 4.0)
    assert comparison_distance(flat, 0.5) == pytest.approx(math.sqrt(9 + 4), abs=1e-12)
    right = comparison_triangle(0.0, 3.0, 4.0, 5.0)
    assert comparison_distance(right, 0.5) == pytest.approx(2.5, abs=1e-12)
    assert comparison_distance(right, 0.0) == 3.0
    assert comparison_distance(right, 1.0) == 4.0


def test_comparison_triangle_rejects_impossible_sides():
    with pytest.raises(NotRealizableError):
        comparison_triangle(0.0, 1.0, 1.0, 3.0)
    with pytest.raises(NotRealizableError):
        comparison_triangle(1.0, math.pi, 1.0, 1.0)
    with pytest.raises(NotRealizableError):
        comparison_triangle(1.0, 3.0, 3.0, 3.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(-2, 2), st.floats(0.05, 1), st.floats(0.05, 1), st.floats(0.05, 1))
def test_comparison_triangle_realizes_its_sides(k, a, b, c):
    assume(a <= b + c and b <= a + c and c <= a + b)
    tri = comparison_triangle(k, a, b, c)
    assert np.allclose(realized_side_lengths(tri), (a, b, c), atol=1e-7)


# simplices

@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_euclidean_edge_length(n):
    assert regular_simplex(n, 0.0).edge_length == pytest.approx(math.sqrt(2 * (n + 1) / n),
                                                                abs=1e-9)


def test_simplex_vertices_are_equidistant():
    for n, k in ((2, 0.5), (3, -1.0), (4, 0.2)):
        V = simplex_vertices(n, k)
        D = model_distance(k, V[:, None, :], V[None, :, :])
        edge = regular_simplex(n, k).edge_length
        iu = np.triu_indices(n + 1, 1)
        assert np.allclose(D[iu], edge, atol=1e-10)
        assert np.allclose(model_distance(k, origin(k, n), V), 1.0, atol=1e-12)


def test_euclidean_inradius():
    assert inradius(2, 0.0) == pytest.approx(0.5, abs=1e-7)
    assert inradius(3, 0.0) == pytest.approx(1 / 3, abs=1e-7)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("k", [-2.0, -0.5, 0.0, 0.3, 0.6])
def test_inradius_matches_closed_form(n, k):
    assert inradius(n, k) == pytest.approx(closed_form_inradius(n, k), abs=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_inradius_strictly_increasing(n):
    ks = np.linspace(-3, 2.4, 20)
    r = [inradius(n, k, strict=False, check=False) for k in ks]
    assert np.all(np.diff(r) > 0)


def test_inradius_domain():
    with pytest.raises(DomainError):
        inradius(2, 0.7)
    with pytest.raises(DomainError):
        inradius(2, 2.5, strict=False)
    with pytest.raises(DomainError):
        regular_simplex(2, 3.0)
    with pytest.raises(DomainError):
        regular_simplex(1, 0.0)


def test_solve_kn():
    assert abs(solve_kn(2)) <= 1e-6
    for n in (3, 4, 5):
        k = solve_kn(n)
        assert k == pytest.approx(closed_form_kn(n), abs=1e-8)
        assert abs(inradius(n, k, strict=False, check=False) - 0.5) <= 1e-10


def test_scaled_simplex_edge():
    # the R-ball at curvature k is the unit ball at curvature k R^2 scaled by R
    R, k = 0.5, 1.2
    assert regular_simplex(2, k, R).edge_length == pytest.approx(
        R * regular_simplex(2, k * R * R).edge_length, rel=1e-12)


# doubles

@pytest.mark.parametrize("k", [0.0, -1.0, 0.3])
def test_cross_copy_centre_distance_is_twice_the_inradius(k):
    spec = ModelSpaceSpec("double_simplex", 2, k)
    c = origin(k, 2)
    d = double_distance(ModelPoint(spec, c, 0), ModelPoint(spec, c, 1))
    assert d == pytest.approx(2 * inradius(2, k), abs=1e-9)
    pts = boundary_grid(2, k)[0]
    brute = (2 * model_distance(k, c, pts)).min()
    assert abs(d - brute) <= 1e-4


def test_same_copy_uses_ambient_distance():
    spec = ModelSpaceSpec("double_simplex", 2, 0.0)
    a, b = np.array([0.1, 0.0]), np.array([-0.2, 0.1])
    assert double_distance(ModelPoint(spec, a, 1), ModelPoint(spec, b, 1)) == pytest.approx(
        np.linalg.norm(a - b))


def test_double_radius_at_k2():
    rad, res = double_radius(2, 0.0)
    assert rad == pytest.approx(1.0, abs=0.02)
    assert res < 0.1


def test_double_grid_matrix_is_a_metric():
    spec, coords, copies = double_grid_points(2, -0.5, 6)
    validate_metric(model_distance_matrix(spec, coords, copies))


# sampling

@pytest.mark.parametrize("spec", [
    ModelSpaceSpec("sphere", 2, 1.0),
    ModelSpaceSpec("sphere", 3, 0.5),
    ModelSpaceSpec("ball", 2, -1.0, 1.5),
    ModelSpaceSpec("ball", 3, 0.0, 2.0),
    ModelSpaceSpec("ball", 2, 1.0, 2.0),
    ModelSpaceSpec("projective", 2, 1.0),
    ModelSpaceSpec("interval", 1, 0.0, math.pi),
    ModelSpaceSpec("simplex", 2, 0.3),
    ModelSpaceSpec("simplex", 3, -1.0),
    ModelSpaceSpec("double_simplex", 2, 0.0),
])
def test_samples_are_valid_metric_spaces(spec):
    space = sample_model_space(spec, 80, 3)
    assert space.n_points == 80
    assert space.provenance == {"source": "sampled", "spec": spec.to_dict(), "N": 80, "seed": 3}
    assert max(p.constraint_defect() for p in space.points) < 1e-9
    again = sample_model_space(spec, 80, 3)
    assert np.array_equal(space.dist, again.dist)


def test_ball_and_simplex_samples_stay_inside():
    spec = ModelSpaceSpec("ball", 2, -1.0, 0.8)
    X, _ = sample_points(spec, 500, 0)
    assert model_distance(-1.0, origin(-1.0, 2), X).max() <= 0.8 + 1e-12
    X, _ = sample_points(ModelSpaceSpec("simplex", 3, 0.4), 300, 0)
    assert in_simplex(0.4, simplex_vertices(3, 0.4), X).all()


def test_interval_sample_keeps_endpoints():
    X, _ = sample_points(ModelSpaceSpec("interval", 1, 0.0, 2.0), 50, 1)
    assert X[0, 0] == 0.0 and X[-1, 0] == 2.0
    assert np.all(np.diff(X[:, 0]) > 0)


def test_double_sample_has_boundary_points_in_copy_zero():
    space = sample_model_space(ModelSpaceSpec("double_simplex", 2, 0.0), 40, 2)
    copies = np.array([p.copy for p in space.points])
    assert (copies[-10:] == 0).all()
    assert set(copies[:30]) == {0, 1}


def test_sphere_sample_is_roughly_uniform():
    X, _ = sample_points(ModelSpaceSpec("sphere", 2, 1.0), 20000, 5)
    assert np.abs(X.mean(axis=0)).max() < 0.03
    # Archimedes: the height coordinate is uniform on [-1, 1]
    assert np.mean(X[:, 2] > 0.5) == pytest.approx(0.25, abs=0.02)
