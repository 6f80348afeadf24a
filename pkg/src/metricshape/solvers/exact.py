"""Branch and bound for max-average (max-sum diversity) and max-min (p-dispersion) tuples."""

import math

import numpy as np

from .._validation import check_objective, check_q
from ..errors import BudgetExceededError
from .config import Configuration, SolverBudget, as_matrix, better, make_configuration, score


def _top_sum(values, m, axis=-1):
    """Sum of the ``m`` largest entries along ``axis``."""
    if m <= 0:
        return np.zeros(np.delete(values.shape, axis)) if values.ndim > 1 else 0.0
    size = values.shape[axis]
    if m >= size:
        return values.sum(axis=axis)
    part = np.partition(values, size - m, axis=axis)
    return np.take(part, np.arange(size - m, size), axis=axis).sum(axis=axis)


class _Search:
    def __init__(self, D, q, objective, repeats, max_nodes, incumbent):
        self.D = D
        self.N = D.shape[0]
        self.q = q
        self.objective = objective
        self.repeats = repeats
        self.max_nodes = max_nodes
        self.nodes = 0
        self.pairs = math.comb(q, 2)
        self.slack = 1e-9 * max(1.0, float(D.max()))
        self.best_idx = tuple(incumbent.indices)
        self.best = incumbent.score
        self.ties_settled = False
        self.upper = np.triu(np.ones((self.N, self.N), dtype=bool), 0 if repeats else 1)

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            best = make_configuration(self.D, self.best_idx, self.objective, "exact", False)
            raise BudgetExceededError(best, self.nodes)

    def _offer(self, idx):
        s = score(self.D, idx, self.objective)
        if better(s, idx, self.best, self.best_idx):
            self.best, self.best_idx = s, tuple(idx)
        if s >= self.best:
            # every tuple visited from now on is lexicographically larger
            self.ties_settled = True

    # max-average
    def average(self, start, chosen, partial, row):
        m = self.q - len(chosen)
        cand = np.arange(start, self.N)
        if cand.size == 0 or (not self.repeats and cand.size < m):
            return
        c = row[cand]
        threshold = self.best - self.slack
        if m == 1:
            totals = (partial + c) / self.pairs
            for j in cand[totals >= threshold]:
                self._tick()
                self._offer(chosen + [int(j)])
            return
        sub = self.D[start:, start:]
        if m == 2:
            self._last_pair(start, chosen, partial, c, sub, threshold)
            return
        if self.repeats:
            vals = c + 0.5 * (m - 1) * sub.max(axis=1)
            bound = partial + m * vals.max()
        else:
            vals = c + 0.5 * _top_sum(sub, m - 1, axis=1)
            bound = partial + _top_sum(vals, m)
        if bound / self.pairs < threshold:
            return
        for j in cand:
            self._tick()
            nxt = int(j) if self.repeats else int(j) + 1
            self.average(nxt, chosen + [int(j)], partial + row[j], row + self.D[j])

    def _last_pair(self, start, chosen, partial, c, sub, threshold):
        totals = (partial + c[:, None] + c[None, :] + sub) / self.pairs
        hits = (totals >= threshold) & self.upper[start:, start:]
        if not hits.any():
            return
        a, b = np.nonzero(hits)
        for u, v in zip(a, b):  # row-major order keeps the lexicographic sweep
            self._tick()
            self._offer(chosen + [start + int(u), start + int(v)])

    # max-min
    def minimum(self, start, chosen, current, colmin):
        m = self.q - len(chosen)
        if m == 0:
            self._offer(chosen)
            return
        cand = np.arange(start, self.N)
        if self.ties_settled:
            cand = cand[colmin[cand] > self.best]
            if current <= self.best:
                return
        else:
            cand = cand[colmin[cand] >= self.best]
            if current < self.best:
                return
        if cand.size < m:
            return
        for j in cand:
            self._tick()
            self.minimum(int(j) + 1, chosen + [int(j)], min(current, colmin[j]),
                         np.minimum(colmin, self.D[j]))


def exact_subset(space, q, objective="average", repeats=False, budget=None, incumbent=None):
    """Globally optimal q-tuple by depth-first branch and bound.

    Tuples are explored as sorted index sequences in lexicographic order,
    so among equal scores the lexicographically smallest tuple wins. The
    max-average bound adds, for each still-missing point, its distance to
    the chosen points plus half its largest distances to other candidates.
    The max-min search discards every candidate closer than the incumbent
    score to a chosen point.

    With ``repeats=True`` a point may be used several times (q-tuples of
    the underlying space rather than q-subsets).

    Raises BudgetExceededError (carrying the incumbent) after
    ``budget.max_nodes`` nodes.
    """
    from .heuristics import greedy_exchange

    D = as_matrix(space)
    N = D.shape[0]
    check_objective(objective)
    q = check_q(q, N, repeats)
    budget = budget or SolverBudget()
    if objective == "minimum" and repeats:
        if q > N:
            return Configuration((0,) * q, objective, 0.0, "exact", True)
        repeats = False
    if incumbent is None:
        incumbent = greedy_exchange(D, q, objective, budget, repeats=repeats)
    search = _Search(D, q, objective, repeats, budget.max_nodes, incumbent)
    if objective == "average":
        search.average(0, [], 0.0, np.zeros(N))
    else:
        search.minimum(0, [], np.inf, np.full(N, np.inf))
    return make_configuration(D, search.best_idx, objective, "exact", True)
