"""Subset selection for the max-average (q-extent) and max-min (packing) objectives."""

from .config import Configuration, SolverBudget, score
from .exact import exact_subset
from .heuristics import anneal, greedy_exchange, local_search

__all__ = ["Configuration", "SolverBudget", "score", "exact_subset", "greedy_exchange",
           "anneal", "local_search"]
