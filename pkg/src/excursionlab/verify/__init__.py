"""Oracles, exact identities and Monte Carlo checks."""

from .enumerate import all_increments, all_positions, exhaustive_corpus, random_corpus
from .exact import inequality_suite, oracle_equivalence, reflection_identity_check
from .montecarlo import (
    decays_quadratically,
    decreasing_within_noise,
    local_time_tail,
    max_at_most,
    max_excursion_tail,
    min_max_small_ball,
    nk_concentration,
    quadratic_rates,
    tkn_concentration,
    truncated_sum_bounds,
)
from .oracle import brute_force_excursion_oracle
from .samples import WalkSamples, sample_walks
from .suite import SUITES, run_suite, suite_document

__all__ = [
    "SUITES",
    "WalkSamples",
    "all_increments",
    "all_positions",
    "brute_force_excursion_oracle",
    "decays_quadratically",
    "decreasing_within_noise",
    "exhaustive_corpus",
    "inequality_suite",
    "local_time_tail",
    "max_at_most",
    "max_excursion_tail",
    "min_max_small_ball",
    "nk_concentration",
    "oracle_equivalence",
    "quadratic_rates",
    "random_corpus",
    "reflection_identity_check",
    "run_suite",
    "sample_walks",
    "suite_document",
    "tkn_concentration",
    "truncated_sum_bounds",
]
