"""Greedy construction with swap local search, and simulated annealing."""

import numpy as np

from .._validation import check_objective, check_q
from .config import Configuration, SolverBudget, as_matrix, better, make_configuration


def _min_pairwise(D, idx):
    if len(idx) < 2:
        return np.inf
    sub = D[np.ix_(idx, idx)]
    iu = np.triu_indices(len(idx), 1)
    return float(sub[iu].min())


def _build(D, q, objective, repeats):
    N = D.shape[0]
    i, j = np.unravel_index(int(np.argmax(D)), D.shape)
    chosen = [int(min(i, j)), int(max(i, j))]
    while len(chosen) < q:
        rows = D[chosen]
        gain = rows.sum(axis=0) if objective == "average" else rows.min(axis=0)
        if not repeats:
            gain = gain.copy()
            gain[chosen] = -np.inf
        chosen.append(int(np.argmax(gain)))
    return chosen


def _swap_gains(D, chosen, objective, repeats):
    """gains[p, j]: change in objective (sum or min) when position p is replaced by j."""
    N = D.shape[0]
    idx = np.asarray(chosen)
    if objective == "average":
        row = D[idx].sum(axis=0)
        gains = row[None, :] - D[idx] - row[idx][:, None]
    else:
        current = _min_pairwise(D, chosen)
        gains = np.empty((len(idx), N))
        for p in range(len(idx)):
            rest = np.delete(idx, p)
            rest_min = _min_pairwise(D, list(rest))
            col = D[rest].min(axis=0)
            gains[p] = np.minimum(rest_min, col) - current
    if not repeats:
        gains[:, idx] = -np.inf
    else:
        gains[np.arange(len(idx)), idx] = -np.inf
    return gains


def local_search(D, chosen, objective, repeats=False):
    """Best-improvement single swaps until no swap improves by more than round-off."""
    chosen = list(chosen)
    eps = 1e-12 * max(float(D.max()), np.finfo(float).tiny)
    if len(chosen) == D.shape[0] and not repeats:
        return chosen
    while True:
        gains = _swap_gains(D, chosen, objective, repeats)
        p, j = np.unravel_index(int(np.argmax(gains)), gains.shape)
        if not gains[p, j] > eps:
            return chosen
        chosen[p] = int(j)


def greedy_exchange(space, q, objective="average", budget=None, repeats=False):
    """Greedy build from the diameter pair, then 1-swap local search."""
    D = as_matrix(space)
    check_objective(objective)
    q = check_q(q, D.shape[0], repeats)
    if objective == "minimum" and repeats:
        if q > D.shape[0]:
            return Configuration((0,) * q, objective, 0.0, "greedy")
        repeats = False
    chosen = _build(D, q, objective, repeats)
    chosen = local_search(D, chosen, objective, repeats)
    return make_configuration(D, chosen, objective, "greedy")


def _anneal_run(D, start, objective, repeats, steps, T0, cooling, rng):
    N = D.shape[0]
    q = len(start)
    S = list(start)
    in_set = np.zeros(N, dtype=bool)
    in_set[S] = True
    pos = rng.integers(0, q, steps)
    picks = rng.random(steps)
    coins = rng.random(steps)
    row = D[S].sum(axis=0)
    total = float(row[S].sum()) / 2.0
    current_min = _min_pairwise(D, S)
    best_val = total if objective == "average" else current_min
    best_S = list(S)
    T = T0
    for t in range(steps):
        p = int(pos[t])
        i = S[p]
        if repeats:
            j = int(picks[t] * N)
            if j == i:
                T *= cooling
                continue
        else:
            outside = N - q
            if outside == 0:
                break
            # the (r+1)-th index outside the set, found through the cumulative mask
            r = int(picks[t] * outside)
            j = int(np.flatnonzero(~in_set)[r])
        if objective == "average":
            delta = row[j] - D[i, j] - row[i]
        else:
            rest = S[:p] + S[p + 1:]
            new_min = min(_min_pairwise(D, rest), float(D[j, rest].min()))
            delta = new_min - current_min
        if delta >= 0 or coins[t] < np.exp(delta / T):
            S[p] = j
            if not repeats:
                in_set[i] = False
                in_set[j] = True
            if objective == "average":
                row += D[j] - D[i]
                total += delta
                value = total
            else:
                current_min += delta
                value = current_min
            if value > best_val:
                best_val, best_S = value, list(S)
        T *= cooling
        if objective == "average" and t % 1024 == 1023:
            row = D[S].sum(axis=0)
            total = float(row[S].sum()) / 2.0
    return best_S


def anneal(space, q, objective="average", budget=None, repeats=False):
    """Simulated annealing over single-index swaps, started from the greedy result.

    Geometric cooling from ``budget.initial_temp * diam``. Each restart
    draws from its own child of ``SeedSequence(budget.seed)``, so results
    are reproducible and best-of-r is nondecreasing in r.
    """
    D = as_matrix(space)
    check_objective(objective)
    q = check_q(q, D.shape[0], repeats)
    budget = budget or SolverBudget()
    if objective == "minimum" and repeats:
        if q > D.shape[0]:
            return Configuration((0,) * q, objective, 0.0, "anneal")
        repeats = False
    init = greedy_exchange(D, q, objective, budget, repeats)
    best = init
    diam = float(D.max())
    if diam == 0.0:
        return best.with_method("anneal")
    T0 = budget.initial_temp * diam
    children = np.random.SeedSequence(budget.seed).spawn(budget.restarts)
    for child in children:
        rng = np.random.default_rng(child)
        S = _anneal_run(D, list(init.indices), objective, repeats, budget.anneal_steps,
                        T0, budget.cooling_rate, rng)
        cand = make_configuration(D, S, objective, "anneal")
        if better(cand.score, cand.indices, best.score, best.indices):
            best = cand
    return best.with_method("anneal")
