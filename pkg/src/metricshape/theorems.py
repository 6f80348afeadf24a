"""Numerical checks of comparison inequalities on sampled spaces.

Curvature and radius hypotheses are labels asserted by the caller; nothing
here tries to infer them from the data. Every verdict carries the sample's
covering radius so discretization error can be judged.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotRealizableError, UnsupportedRegimeError, UnsupportedSpecError
from .invariants import SCHEMA_VERSION, interval_extent, method_tag, packing_radius, q_extent
from .metric import Tolerances, covering_radius, diameter
from .spaceform.models import (
    SIMPLEX_K_MAX,
    ModelSpaceSpec,
    geodesic_point,
    model_distance,
    projective_distance,
)
from .spaceform.sampling import sample_model_space, sample_points
from .spaceform.simplex import regular_simplex, solve_kn
from .spaceform.trig import comparison_distance, comparison_triangle

THEOREMS = ("star", "A", "B", "E", "D1", "G-fixture")
FIXTURE_TOL = {2: 0.03, 3: 0.05}
FIXTURE_N = {2: 600, 3: 1000}


@dataclass
class TheoremVerdict:
    """Outcome of one inequality check: ``margin = rhs - lhs``, claim is ``lhs <= rhs``."""

    theorem: str
    hypotheses: dict
    lhs: float
    rhs: float
    margin: float
    status: str
    method: str
    tolerances: dict
    covering_radius: float = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "theorem_verdict",
            "theorem": self.theorem,
            "hypotheses": self.hypotheses,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "status": self.status,
            "method": self.method,
            "tolerances": self.tolerances,
            "covering_radius": self.covering_radius,
            "details": self.details,
        }


def verdict_status(margin, tol, tag, rhs_exact=True):
    """pass when margin >= -tol; otherwise fail, unless the evidence cannot refute.

    A heuristic maximum or a right-hand side that is only a lower bound
    for the true comparison value gives 'inconclusive' instead of 'fail'.
    """
    if margin >= -tol:
        return "pass"
    return "fail" if tag == "exact" and rhs_exact else "inconclusive"


def _tol(tol):
    return Tolerances() if tol is None else tol


def extent_rhs(n, k, R, q):
    """Known value of xt_q of the R-ball in the n-dimensional space form of curvature k.

    Returns ``(value, exact, regime)``. ``exact`` is False when the value is
    the regular-simplex edge but the simplex is not known to be optimal.
    """
    if k > 0 and R >= math.pi / (2 * math.sqrt(k)):
        return interval_extent(q, math.pi / math.sqrt(k)), True, "hemisphere"
    if q == n + 1 and k * R * R < SIMPLEX_K_MAX:
        edge = regular_simplex(n, k, R).edge_length
        # the R-ball at curvature k is the unit ball at curvature k R^2, scaled by R
        optimal = k * R * R <= solve_kn(n) + 1e-9
        return edge, optimal, "simplex"
    raise UnsupportedRegimeError(
        f"no closed-form xt_{q} for the {R}-ball at curvature {k} in dimension {n}: "
        f"known only for R >= pi/(2 sqrt k) with k > 0, or q = n + 1 "
        f"with k R^2 < (pi/4)^2")


def check_extent_bound(space, n, k, R, q, method="exact", budget=None, tol=None,
                       theorem="star"):
    """Compare xt_q of the space against xt_q of the comparison ball.

    The regime is checked before any solving, so an unsupported (k, R, q)
    fails fast.
    """
    tol = _tol(tol)
    rhs, exact_rhs, regime = extent_rhs(n, k, R, q)
    lhs, conf = q_extent(space, q, method, True, budget)
    tag = method_tag(method)
    margin = rhs - lhs
    return TheoremVerdict(
        theorem=theorem,
        hypotheses={"n": n, "k": k, "R": R, "q": q},
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        status=verdict_status(margin, tol.tol_value, tag, exact_rhs),
        method=tag,
        tolerances=tol.to_dict(),
        covering_radius=covering_radius(space),
        details={"regime": regime, "rhs_is_optimal_value": exact_rhs,
                 "configuration": conf.to_dict()},
    )


def packing_rhs(n):
    """pack_{n+2} of the unit n-sphere: half the edge of the inscribed regular simplex."""
    return math.acos(-1.0 / (n + 1)) / 2.0


def check_packing_bound(space, n, q=None, method="exact", budget=None, tol=None):
    """pack_{n+2} of the space against pack_{n+2} of the unit n-sphere."""
    tol = _tol(tol)
    q = n + 2 if q is None else q
    if q != n + 2:
        raise UnsupportedRegimeError(f"the packing bound is stated for q = n + 2 = {n + 2}")
    rhs = packing_rhs(n)
    lhs, conf = packing_radius(space, q, method, True, budget)
    tag = method_tag(method)
    margin = rhs - lhs
    return TheoremVerdict(
        theorem="E",
        hypotheses={"n": n, "k": 1.0, "q": q},
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        status=verdict_status(margin, tol.tol_value, tag),
        method=tag,
        tolerances=tol.to_dict(),
        covering_radius=covering_radius(space),
        details={"configuration": conf.to_dict()},
    )


GEODESIC_KINDS = ("sphere", "ball", "projective", "interval", "simplex")


def _distance(spec, x, y):
    if spec.kind == "interval":
        return float(abs(x[0] - y[0]))
    if spec.kind == "projective":
        return float(projective_distance(spec.k, x, y))
    return float(model_distance(spec.k, x, y))


def _on_segment(spec, x, y, t):
    if spec.kind == "interval":
        return (1.0 - t) * x + t * y
    if spec.kind == "projective" and np.dot(x, y) < 0:
        # the lift of the shorter projective segment
        y = -y
    return geodesic_point(spec.k, x, y, t)


def check_toponogov_point(spec, k, trials=1000, seed=0, tol=None, max_resamples=1000):
    """Point-to-side comparison on random triangles of a model space.

    Each trial draws p0, p1, p2 and a uniform t, puts q at fraction t along
    the segment p1 p2, and compares dist(p0, q) with the same quantity in
    the curvature-k comparison triangle. Triples that have no comparison
    triangle (for k > 0: a side >= pi/sqrt(k)) are redrawn and counted.
    Every trial has its own child seed, so results do not depend on how
    trials are scheduled.
    """
    tol = _tol(tol)
    if not isinstance(spec, ModelSpaceSpec):
        spec = ModelSpaceSpec.from_dict(spec)
    if spec.kind not in GEODESIC_KINDS:
        raise UnsupportedSpecError(f"exact geodesics are not available for {spec.kind!r}")
    margins = np.empty(trials)
    worst = None
    skipped = 0
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        rng = np.random.default_rng(child)
        for _ in range(max_resamples):
            p, _ = sample_points(spec, 3, rng)
            if spec.kind == "interval":
                p = rng.uniform(0.0, spec.R, (3, 1))
            d01, d02, d12 = (_distance(spec, p[a], p[b]) for a, b in ((0, 1), (0, 2), (1, 2)))
            try:
                tri = comparison_triangle(k, d01, d02, d12)
                break
            except NotRealizableError:
                skipped += 1
        else:
            raise NotRealizableError(f"no admissible triple in {max_resamples} draws")
        t = float(rng.uniform())
        actual = _distance(spec, p[0], _on_segment(spec, p[1], p[2], t))
        model = float(comparison_distance(tri, t))
        margins[i] = actual - model
        if worst is None or margins[i] < worst[0]:
            worst = (margins[i], model, actual, t, (d01, d02, d12))
    margin, model, actual, t, sides = worst
    return TheoremVerdict(
        theorem="D1",
        hypotheses={"k": k, "space": spec.to_dict()},
        lhs=model,
        rhs=actual,
        margin=float(margin),
        status=verdict_status(margin, tol.tol_value, "exact"),
        method="exact",
        tolerances=tol.to_dict(),
        covering_radius=None,
        details={"trials": trials, "seed": seed, "skipped": skipped,
                 "negative": int(np.sum(margins < -tol.tol_value)),
                 "max_abs_margin": float(np.abs(margins).max()),
                 "worst_t": t, "worst_sides": list(sides)},
    )


def theorem_g_fixture(n, N=None, seed=0, method="anneal", budget=None, tol=None):
    """diam and xt_{n+1} of a sample of unit-curvature real projective n-space.

    Both should approach pi/2. ``tol`` is the sampling tolerance for the
    pass decision (0.03 for n = 2, 0.05 for n = 3 by default).
    """
    if n not in (2, 3):
        raise UnsupportedRegimeError("the fixture is defined for n in {2, 3}")
    N = FIXTURE_N[n] if N is None else N
    tol = FIXTURE_TOL[n] if tol is None else tol
    spec = ModelSpaceSpec("projective", n, 1.0)
    space = sample_model_space(spec, N, seed)
    d = diameter(space)
    lhs, conf = q_extent(space, n + 1, method, True, budget)
    rhs = math.pi / 2.0
    tag = method_tag(method)
    ok = abs(rhs - lhs) <= tol and abs(rhs - d) <= tol
    status = "pass" if ok else ("fail" if tag == "exact" else "inconclusive")
    return TheoremVerdict(
        theorem="G-fixture",
        hypotheses={"n": n, "k": 1.0, "q": n + 1},
        lhs=lhs,
        rhs=rhs,
        margin=rhs - lhs,
        status=status,
        method=tag,
        tolerances={"sampling": tol},
        covering_radius=covering_radius(space),
        details={"diam": d, "N": N, "seed": seed, "configuration": conf.to_dict()},
    )
