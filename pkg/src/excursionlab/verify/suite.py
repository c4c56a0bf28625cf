"""Runs the exact and Monte Carlo checks at the scales of a VerifySpec."""

from __future__ import annotations

import logging
from typing import Any

from excursionlab.config import VerifySpec
from excursionlab.models import Completion, VerifyReport
from excursionlab.verify.enumerate import exhaustive_corpus, random_corpus
from excursionlab.verify.exact import (
    inequality_suite,
    oracle_equivalence,
    reflection_identity_check,
)
from excursionlab.verify.montecarlo import (
    local_time_tail,
    max_excursion_tail,
    min_max_small_ball,
    nk_concentration,
    tkn_concentration,
    truncated_sum_bounds,
)
from excursionlab.verify.samples import sample_walks

logger = logging.getLogger(__name__)

SUITES = ("exact", "mc", "all")


def exact_reports(spec: VerifySpec) -> list[VerifyReport]:
    reports = [
        reflection_identity_check(k, a, spec.reflection_n_max)
        for k in spec.reflection_depths
        for a in spec.reflection_levels
    ]
    for completion in Completion:
        reports.append(
            oracle_equivalence(
                exhaustive_corpus(spec.exhaustive_length),
                spec.exhaustive_depths,
                completion=completion,
                name="oracle_equivalence_exhaustive",
            )
        )
        reports.append(
            oracle_equivalence(
                random_corpus(spec.seed, "verify/oracle", spec.random_paths, spec.random_length),
                spec.exhaustive_depths,
                completion=completion,
                name="oracle_equivalence_random",
            )
        )
    reports.append(
        inequality_suite(
            exhaustive_corpus(spec.exhaustive_length),
            spec.inequality_depths,
            name="inequality_suite_exhaustive",
        )
    )
    reports.append(
        inequality_suite(
            random_corpus(
                spec.seed, "verify/inequality", spec.inequality_paths, spec.random_length
            ),
            spec.inequality_depths,
            name="inequality_suite_random",
        )
    )
    return reports


def monte_carlo_reports(spec: VerifySpec, threads: int | None = None) -> list[VerifyReport]:
    """All checks at n = mc_n share one trial set, so overlapping statistics agree."""
    threads = threads or spec.threads
    common = {"seed": spec.seed, "bootstrap": spec.bootstrap}
    depths = tuple(sorted({spec.mc_k, *spec.band_depths}))
    trials = max(spec.mc_trials, spec.concentration_trials)
    shared = sample_walks(
        spec.seed, spec.mc_n, trials, depths, cap=spec.truncation_cap, threads=threads
    )
    k, n = spec.mc_k, spec.mc_n

    reports = [
        nk_concentration(k, n, spec.concentration_trials, samples=shared, **common),
        tkn_concentration(
            k,
            n,
            spec.mc_trials,
            d2=spec.d2,
            tolerance=spec.tkn_tolerance,
            samples=shared,
            **common,
        ),
    ]
    reports.extend(
        tkn_concentration(
            depth,
            n,
            spec.concentration_trials,
            d2=spec.d2,
            check_mean=False,
            samples=shared,
            **common,
        )
        for depth in spec.band_depths
    )
    reports.append(max_excursion_tail(k, n, spec.concentration_trials, samples=shared, **common))
    reports.append(
        truncated_sum_bounds(
            k, spec.truncation_cap, n, spec.concentration_trials, samples=shared, **common
        )
    )
    reports.append(
        local_time_tail(spec.local_time_n, spec.local_time_trials, threads=threads, **common)
    )
    reports.append(
        min_max_small_ball(
            spec.small_ball_ns, spec.small_ball_trials, threads=threads, **common
        )
    )
    return reports


def run_suite(spec: VerifySpec, *, threads: int | None = None) -> list[VerifyReport]:
    reports: list[VerifyReport] = []
    if spec.suite in ("exact", "all"):
        reports.extend(exact_reports(spec))
    if spec.suite in ("mc", "all"):
        reports.extend(monte_carlo_reports(spec, threads))
    for report in reports:
        level = logging.INFO if report.passed else logging.WARNING
        logger.log(level, "%s: %s", report.name, "pass" if report.passed else "FAIL")
    return reports


def suite_document(spec: VerifySpec, reports: list[VerifyReport]) -> dict[str, Any]:
    return {
        "suite": spec.suite,
        "seed": spec.seed,
        "passed": all(report.passed for report in reports),
        "reports": [report.to_dict() for report in reports],
    }
