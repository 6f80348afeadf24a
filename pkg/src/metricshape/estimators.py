"""scikit-learn style wrappers around the subset solvers and the invariant report."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.metrics import pairwise_distances
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_method
from .invariants import compute_report, packing_radius, q_extent
from .metric import Tolerances, validate_metric
from .solvers import SolverBudget


def _metric_space(X, metric, tol_metric):
    X = check_array(X, dtype=np.float64)
    D = X if metric == "precomputed" else pairwise_distances(X, metric=metric)
    if metric != "precomputed":
        D = np.minimum(D, D.T)
        np.fill_diagonal(D, 0.0)
    return X, validate_metric(D, Tolerances(tol_metric=tol_metric))


class _SubsetSelector(TransformerMixin, BaseEstimator):
    _objective = None

    def __init__(self, q=3, method="exact", metric="precomputed", repeats=False,
                 max_nodes=2_000_000, restarts=4, anneal_steps=20_000, seed=0,
                 tol_metric=1e-9):
        self.q = q
        self.method = method
        self.metric = metric
        self.repeats = repeats
        self.max_nodes = max_nodes
        self.restarts = restarts
        self.anneal_steps = anneal_steps
        self.seed = seed
        self.tol_metric = tol_metric

    def _budget(self):
        return SolverBudget(max_nodes=self.max_nodes, restarts=self.restarts,
                            anneal_steps=self.anneal_steps, seed=self.seed)

    def fit(self, X, y=None):
        """Select the optimal q-tuple. ``X`` is a distance matrix or a feature array."""
        check_method(self.method)
        _, self.space_ = _metric_space(X, self.metric, self.tol_metric)
        solve = q_extent if self._objective == "average" else packing_radius
        self.value_, self.configuration_ = solve(self.space_, self.q, self.method,
                                                 self.repeats, self._budget())
        self.indices_ = np.asarray(self.configuration_.indices, dtype=int)
        self.score_ = self.configuration_.score
        self.n_features_in_ = self.space_.n_points if self.metric == "precomputed" \
            else np.asarray(X).shape[1]
        return self

    def transform(self, X):
        """The selected rows of ``X``; for precomputed input, the selected submatrix."""
        check_is_fitted(self, "indices_")
        X = check_array(X, dtype=np.float64)
        if self.metric == "precomputed":
            return X[np.ix_(self.indices_, self.indices_)]
        return X[self.indices_]

    def get_support(self):
        check_is_fitted(self, "indices_")
        mask = np.zeros(self.space_.n_points, dtype=bool)
        mask[self.indices_] = True
        return mask


class ExtentSelector(_SubsetSelector):
    """Pick q points with maximal average pairwise distance.

    After ``fit``, ``value_`` holds the q-extent and ``indices_`` an extender.

    >>> import numpy as np
    >>> X = np.array([[0.0], [1.0], [2.0], [3.0]])
    >>> ExtentSelector(q=2, metric="euclidean").fit(X).indices_.tolist()
    [0, 3]
    """

    _objective = "average"


class PackingSelector(_SubsetSelector):
    """Pick q points maximizing the minimum pairwise distance.

    ``value_`` is the q-packing radius (half that minimum distance).
    """

    _objective = "minimum"


class ShapeInvariants(TransformerMixin, BaseEstimator):
    """Compute diameter, radius, excess, xt_q and pack_q of a point set.

    ``transform`` returns a single row with the invariants in the order of
    ``get_feature_names_out()``.
    """

    def __init__(self, q_values=(2, 3, 4), method="exact", metric="precomputed",
                 max_nodes=2_000_000, restarts=4, anneal_steps=20_000, seed=0,
                 tol_metric=1e-9):
        self.q_values = q_values
        self.method = method
        self.metric = metric
        self.max_nodes = max_nodes
        self.restarts = restarts
        self.anneal_steps = anneal_steps
        self.seed = seed
        self.tol_metric = tol_metric

    def fit(self, X, y=None):
        check_method(self.method)
        _, self.space_ = _metric_space(X, self.metric, self.tol_metric)
        budget = SolverBudget(max_nodes=self.max_nodes, restarts=self.restarts,
                              anneal_steps=self.anneal_steps, seed=self.seed)
        self.report_ = compute_report(self.space_, self.q_values, method=self.method,
                                      budget=budget)
        return self

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "report_")
        qs = self.report_.q_values
        return np.array(["diam", "rad", "excess"] + [f"xt_{q}" for q in qs]
                        + [f"pack_{q}" for q in qs], dtype=object)

    def transform(self, X=None):
        check_is_fitted(self, "report_")
        r = self.report_
        row = [r.diam, r.rad, r.excess] + [r.xt[q] for q in r.q_values] \
            + [r.pack[q] for q in r.q_values]
        return np.asarray(row, dtype=float)[None, :]
