import math

import numpy as np
import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line for an acceptance criterion, then assert it."""

    def record(number, title, ok, detail=""):
        line = f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)


def euclidean_matrix(points):
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    D = np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(-1))
    return np.minimum(D, D.T)


def random_metric(rng, n):
    """Euclidean, integer-graph or ultrametric-like matrices; the latter two have many ties."""
    kind = rng.integers(0, 3)
    if kind == 0:
        return euclidean_matrix(rng.random((n, int(rng.integers(1, 4)))))
    if kind == 1:
        W = rng.integers(1, 4, (n, n)).astype(float)
        W = np.minimum(W, W.T)
        np.fill_diagonal(W, 0.0)
        for m in range(n):  # Floyd-Warshall closure makes it a metric
            W = np.minimum(W, W[:, m:m + 1] + W[m:m + 1, :])
        return W
    x = rng.integers(0, 3, n).astype(float)
    return np.abs(x[:, None] - x[None, :]) + (1 - np.eye(n))


def circle_matrix(m):
    """Geodesic distances of m equally spaced points on the unit circle."""
    t = 2 * np.pi * np.arange(m) / m
    d = np.abs(t[:, None] - t[None, :])
    return np.minimum(d, 2 * np.pi - d)


def grid_extent(q, L, m=1000):
    """Exact xt_q of the m-point grid on [0, L] over all q-multisets.

    For sorted x_1 <= ... <= x_q the pair sum is sum_i (2i - q - 1) x_i, so a
    running maximum over nondecreasing grid choices covers every multiset.
    """
    grid = np.linspace(0.0, L, m)
    best = np.zeros(m)
    for i in range(1, q + 1):
        best = np.maximum.accumulate(best + (2 * i - q - 1) * grid)
    return best[-1] / math.comb(q, 2)
