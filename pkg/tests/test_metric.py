import numpy as np
import pytest
from conftest import circle_matrix, euclidean_matrix
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from metricshape import (
    NegativeDistanceError,
    NonSymmetricError,
    NonzeroDiagonalError,
    Tolerances,
    TooFewPointsError,
    TriangleViolationError,
    covering_radius,
    diameter,
    excess,
    radius,
    validate_metric,
)
from metricshape.spaceform import ModelSpaceSpec, sample_model_space

point_clouds = arrays(np.float64, st.tuples(st.integers(2, 9), st.integers(1, 3)),
                      elements=st.floats(-10, 10, allow_nan=False, width=32))


def test_two_point_space_is_valid():
    space = validate_metric([[0, 1], [1, 0]])
    assert space.n_points == 2
    assert not space.dist.flags.writeable


def test_asymmetric_matrix_reports_first_pair():
    with pytest.raises(NonSymmetricError) as err:
        validate_metric([[0, 1], [2, 0]])
    assert (err.value.i, err.value.j) == (0, 1)


def test_triangle_violation_reports_triple_and_defect():
    with pytest.raises(TriangleViolationError) as err:
        validate_metric([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    assert (err.value.i, err.value.j, err.value.k) == (0, 2, 1)
    assert err.value.defect == pytest.approx(1.0)


def test_nonzero_diagonal_and_negative_entries():
    with pytest.raises(NonzeroDiagonalError) as err:
        validate_metric([[0, 1], [1, 0.5]])
    assert err.value.i == 1
    with pytest.raises(NegativeDistanceError):
        validate_metric([[0, -1], [-1, 0]])


def test_shape_and_finiteness_are_checked():
    with pytest.raises(ValueError):
        validate_metric(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        validate_metric([[0, np.nan], [np.nan, 0]])


def test_triangle_slack_is_configurable():
    m = [[0, 1, 2 + 1e-6], [1, 0, 1], [2 + 1e-6, 1, 0]]
    with pytest.raises(TriangleViolationError):
        validate_metric(m)
    validate_metric(m, Tolerances(tol_metric=1e-5))


def test_tolerances_must_be_positive():
    with pytest.raises(ValueError):
        Tolerances(tol_metric=0.0)


def test_diameter_examples():
    assert diameter(validate_metric([[0.0]])) == 0.0
    assert diameter(validate_metric([[0, 1], [1, 0]])) == 1.0
    assert diameter(validate_metric(circle_matrix(360))) == pytest.approx(np.pi, abs=0.01)


def test_radius_examples():
    assert radius(validate_metric([[0.0]])) == (0.0, 0)
    assert radius(validate_metric([[0, 1, 1], [1, 0, 2], [1, 2, 0]])) == (1.0, 0)


def test_radius_of_sphere_sample_matches_antipodal_gap():
    space = sample_model_space(ModelSpaceSpec("sphere", 2, 1.0), 500, 0)
    X = np.array([p.coords for p in space.points])
    # for each x, its farthest sample point is the one closest to -x
    gap = np.arccos(np.clip(-X @ X.T, -1, 1)).min(axis=1)
    value, center = radius(space)
    assert value == pytest.approx(np.pi - gap.max(), abs=1e-9)
    assert value <= np.pi


def test_excess_examples():
    assert excess(validate_metric([[0, 1], [1, 0]])) == 0.0
    assert excess(validate_metric(euclidean_matrix([0, 0.5, 1]))) == 0.0
    space = sample_model_space(ModelSpaceSpec("sphere", 2, 1.0), 500, 0)
    assert 0.0 <= excess(space) <= 0.15
    with pytest.raises(TooFewPointsError):
        excess(validate_metric([[0.0]]))


def test_covering_radius_of_circle_grid():
    space = validate_metric(circle_matrix(360))
    assert covering_radius(space) == pytest.approx(2 * np.pi / 360)


def test_subspace_and_scaled():
    space = validate_metric(euclidean_matrix([0, 1, 3]), labels=("a", "b", "c"))
    sub = space.subspace([2, 0])
    assert sub.labels == ("c", "a")
    assert sub.dist[0, 1] == 3.0
    assert diameter(space.scaled(2.0)) == 6.0


@settings(max_examples=60, deadline=None)
@given(point_clouds, st.randoms(use_true_random=False))
def test_invariants_are_permutation_invariant(X, rnd):
    D = euclidean_matrix(X)
    perm = list(range(len(D)))
    rnd.shuffle(perm)
    a = validate_metric(D)
    b = validate_metric(D[np.ix_(perm, perm)])
    assert diameter(a) == diameter(b)
    assert radius(a)[0] == radius(b)[0]
    assert excess(a) == pytest.approx(excess(b), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(point_clouds, st.floats(0.01, 100))
def test_scaling_equivariance(X, c):
    space = validate_metric(euclidean_matrix(X))
    scaled = space.scaled(c)
    assert diameter(scaled) == pytest.approx(c * diameter(space), rel=1e-12, abs=1e-12)
    assert radius(scaled)[0] == pytest.approx(c * radius(space)[0], rel=1e-12, abs=1e-12)
    assert excess(scaled) == pytest.approx(c * excess(space), rel=1e-9, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(point_clouds)
def test_radius_between_half_diameter_and_diameter(X):
    space = validate_metric(euclidean_matrix(X))
    d, r = diameter(space), radius(space)[0]
    assert d / 2 - 1e-12 <= r <= d + 1e-12
    assert excess(space) >= 0.0


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, st.integers(2, 12), elements=st.floats(0, 5, width=32)))
def test_excess_vanishes_on_segments(x):
    assert excess(validate_metric(euclidean_matrix(x))) == pytest.approx(0.0, abs=1e-12)
