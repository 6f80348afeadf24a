"""Input validation helpers, in the spirit of ``sklearn.utils.validation``."""

import numbers

import numpy as np
from sklearn.utils import check_array

from .errors import InfeasibleQError

OBJECTIVES = ("average", "minimum")
METHODS = ("exact", "greedy", "anneal")


def check_square_matrix(matrix, name="dist"):
    """Return ``matrix`` as a finite float64 square array (a copy)."""
    arr = check_array(
        matrix, dtype=np.float64, ensure_all_finite=True, copy=True,
        ensure_min_samples=1, ensure_min_features=1, input_name=name,
    )
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    return arr


def check_objective(objective):
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    return objective


def check_method(method):
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    return method


def check_q(q, n_points, repeats=False):
    """Validate a tuple size against the number of points available."""
    if not isinstance(q, numbers.Integral) or isinstance(q, bool):
        raise InfeasibleQError(f"q must be an integer, got {q!r}")
    q = int(q)
    if q < 2:
        raise InfeasibleQError(f"q must be at least 2, got {q}")
    if not repeats and q > n_points:
        raise InfeasibleQError(f"q = {q} exceeds the number of points ({n_points})")
    if n_points < 1:
        raise InfeasibleQError("space has no points")
    return q


def check_positive(value, name):
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)
