"""Deck balancing workbench: simulation, objectives, optimizers, run comparison."""

import json

from . import _core
from ._core import (
    GenerationError,
    ParseError,
    UnsupportedError,
    UsageError,
    attainment_surface,
    ci_halfwidth,
    deck_is_valid,
    dominance_objective,
    hv_contributions,
    hypervolume,
    load_deck,
    nondominated_sort,
    normalized_indicators,
    random_valid_deck,
    sample_size_study,
    surrogate_objectives,
)


def simulate(deck, games=2000, seed=1, policies="p4p0"):
    """Play `games` games on `deck` (list of card rows) and return the summary dict."""
    return json.loads(_core.simulate_json(deck, games, seed, policies))


def optimize(objective="S", mu=10, evals=20000, seed=1, games=2000, convergence_stop=True):
    """Run one optimizer and return its run artifact as a dict."""
    return json.loads(_core.optimize_json(objective, mu, evals, seed, games, convergence_stop))


def run_experiment(config_path):
    """Run the experiment described by a config file and return the report dict."""
    return json.loads(_core.run_experiment_json(str(config_path)))


def eaf_test(a, b, permutations=10000, alpha=0.05, seed=1):
    """Two-sample EAF permutation test between two lists of run fronts."""
    return json.loads(_core.eaf_test_json(a, b, permutations, alpha, seed))


__all__ = [
    "GenerationError",
    "ParseError",
    "UnsupportedError",
    "UsageError",
    "attainment_surface",
    "ci_halfwidth",
    "deck_is_valid",
    "dominance_objective",
    "eaf_test",
    "hv_contributions",
    "hypervolume",
    "load_deck",
    "nondominated_sort",
    "normalized_indicators",
    "optimize",
    "random_valid_deck",
    "run_experiment",
    "sample_size_study",
    "simulate",
    "surrogate_objectives",
]
