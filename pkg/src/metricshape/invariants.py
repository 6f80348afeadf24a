"""q-extents, packing radii and the combined invariant report."""

import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_method, check_positive, check_q
from .errors import BudgetExceededError
from .metric import covering_radius, diameter, excess, radius
from .solvers import SolverBudget, anneal, exact_subset, greedy_exchange

SCHEMA_VERSION = 1

_SOLVERS = {"greedy": greedy_exchange, "anneal": anneal}


def method_tag(method):
    """'exact' for branch and bound, 'heuristic' for everything else."""
    return "exact" if method == "exact" else "heuristic"


def _solve(space, q, objective, method, repeats, budget):
    check_method(method)
    budget = budget or SolverBudget()
    if method == "exact":
        return exact_subset(space, q, objective, repeats=repeats, budget=budget)
    return _SOLVERS[method](space, q, objective, budget, repeats=repeats)


def q_extent(space, q, method="exact", repeats=True, budget=None):
    """Maximal average pairwise distance over q-tuples.

    Tuples may repeat points by default, which is what makes the sequence
    in q well defined for q larger than the number of points. Returns
    ``(value, configuration)``.
    """
    conf = _solve(space, q, "average", method, repeats, budget)
    return conf.score, conf


def packing_radius(space, q, method="exact", repeats=True, budget=None):
    """Half the maximal minimum pairwise distance over q-tuples: ``(value, configuration)``.

    A tuple with a repeated point has minimum 0, so ``repeats`` only
    matters when q exceeds the number of points (the value is then 0).
    """
    conf = _solve(space, q, "minimum", method, repeats, budget)
    return conf.score / 2.0, conf


def interval_extent(q, L):
    """q-extent of the segment [0, L]: floor(q/2) * ceil(q/2) * L / C(q, 2).

    Optimal tuples put floor(q/2) points on one end and the rest on the other.
    """
    q = check_q(q, q)
    L = check_positive(L, "L")
    return (q // 2) * ((q + 1) // 2) * L / math.comb(q, 2)


@dataclass(frozen=True)
class ExtentEstimate:
    """xt_q for q = 2..q_max with the last value as upper estimate of the extent."""

    values: dict
    upper: float
    lower: float
    diam: float

    def to_dict(self):
        return {"values": {str(q): v for q, v in self.values.items()}, "upper": self.upper,
                "lower": self.lower, "diam": self.diam}


def extent_estimate(space, q_max, method="exact", budget=None):
    """xt_2, ..., xt_{q_max}; the extent lies in ``[diam/2, xt_{q_max}]``."""
    if q_max < 2:
        raise ValueError(f"q_max must be at least 2, got {q_max}")
    values = {q: q_extent(space, q, method, True, budget)[0] for q in range(2, q_max + 1)}
    d = diameter(space)
    return ExtentEstimate(values, values[q_max], d / 2.0, d)


@dataclass
class InvariantReport:
    """All invariants computed for one space, with per-value method tags."""

    provenance: dict
    n_points: int
    q_values: list
    xt: dict = field(default_factory=dict)
    pack: dict = field(default_factory=dict)
    configurations: dict = field(default_factory=dict)
    tags: dict = field(default_factory=dict)
    diam: float = 0.0
    rad: float = 0.0
    rad_center: int = 0
    excess: float = None
    covering_radius: float = None
    extent: ExtentEstimate = None
    solver: dict = field(default_factory=dict)
    budget_exhausted: bool = False

    def chain_violations(self, key="xt", tol=1e-12):
        """Consecutive q where the sequence increases by more than ``tol``."""
        seq = getattr(self, key)
        qs = sorted(seq)
        return [(a, b) for a, b in zip(qs, qs[1:]) if b == a + 1 and seq[b] > seq[a] + tol]

    def to_dict(self):
        def keyed(d):
            return {str(q): v for q, v in sorted(d.items())}

        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "invariant_report",
            "provenance": self.provenance,
            "n_points": self.n_points,
            "q_values": list(self.q_values),
            "diam": self.diam,
            "rad": self.rad,
            "rad_center": self.rad_center,
            "excess": self.excess,
            "covering_radius": self.covering_radius,
            "xt": keyed(self.xt),
            "pack": keyed(self.pack),
            "tags": {name: keyed(t) for name, t in sorted(self.tags.items())},
            "configurations": {name: {str(q): c.to_dict() for q, c in sorted(cs.items())}
                               for name, cs in sorted(self.configurations.items())},
            "extent": None if self.extent is None else self.extent.to_dict(),
            "solver": self.solver,
            "budget_exhausted": self.budget_exhausted,
        }


def compute_report(space, q_values, objectives=("average", "minimum"), method="exact",
                   budget=None, with_excess=True):
    """Diameter, radius, excess, covering radius, and xt_q / pack_q for each q.

    If branch and bound runs out of nodes the incumbent is kept, tagged
    heuristic, and ``budget_exhausted`` is set.
    """
    check_method(method)
    budget = budget or SolverBudget()
    q_values = sorted({int(q) for q in q_values})
    if not q_values:
        raise ValueError("q range is empty")
    for q in q_values:
        check_q(q, space.n_points, repeats=True)
    rad, center = radius(space)
    report = InvariantReport(
        provenance=getattr(space, "provenance", {"source": "matrix"}),
        n_points=space.n_points,
        q_values=q_values,
        diam=diameter(space),
        rad=rad,
        rad_center=center,
        excess=excess(space) if with_excess and space.n_points >= 2 else None,
        covering_radius=covering_radius(space) if space.n_points >= 2 else 0.0,
        solver={"method": method, "objectives": list(objectives), "budget": budget.to_dict()},
    )
    for objective in objectives:
        name, target = ("xt", report.xt) if objective == "average" else ("pack", report.pack)
        confs = report.configurations.setdefault(name, {})
        tags = report.tags.setdefault(name, {})
        for q in q_values:
            try:
                conf = _solve(space, q, objective, method, True, budget)
                tags[q] = method_tag(method)
            except BudgetExceededError as err:
                conf = err.best
                tags[q] = "heuristic"
                report.budget_exhausted = True
            target[q] = conf.score if objective == "average" else conf.score / 2.0
            confs[q] = conf
    if report.xt:
        qs = sorted(report.xt)
        report.extent = ExtentEstimate(dict(report.xt), report.xt[qs[-1]], report.diam / 2.0,
                                       report.diam)
    return report


def sequence_arrays(report, key="xt"):
    """(q, value) columns of a report sequence, for plotting."""
    seq = getattr(report, key)
    qs = np.array(sorted(seq), dtype=int)
    return qs, np.array([seq[q] for q in qs], dtype=float)
