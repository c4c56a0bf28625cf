"""Running extrema of checkpoint ratios and the band flatness checks."""

from __future__ import annotations

import logging
import math
from collections import Counter
from typing import Callable, Iterable

from excursionlab.errors import ParameterError
from excursionlab.models import BandSummary, FlatnessCheck, LilRecord, RangeTag, RatioBand

logger = logging.getLogger(__name__)

RATIOS: dict[str, Callable[[LilRecord], float]] = {
    "r_up_g": lambda record: record.r_up_g,
    "r_lo_h": lambda record: record.r_lo_h,
    "r_fs_limsup_g": lambda record: record.r_fs_limsup_g,
    "r_fs_liminf_h": lambda record: record.r_fs_liminf_h,
}
LOW_RANGE_BAND = "r_lo_h@range-low"


def ratio_band(
    name: str, records: Iterable[LilRecord], ratio: Callable[[LilRecord], float]
) -> RatioBand:
    """Sup and inf over trials at each m, then running extrema along m."""
    by_m: dict[int, list[float]] = {}
    for record in records:
        by_m.setdefault(record.m, []).append(ratio(record))
    if not by_m:
        raise ParameterError(f"No records for band {name!r}")

    ms = tuple(sorted(by_m))
    running_sup: list[float] = []
    running_inf: list[float] = []
    for m in ms:
        hi, lo = max(by_m[m]), min(by_m[m])
        running_sup.append(max(hi, running_sup[-1]) if running_sup else hi)
        running_inf.append(min(lo, running_inf[-1]) if running_inf else lo)
    return RatioBand(name, ms, tuple(running_sup), tuple(running_inf))


def _middle_end(band: RatioBand) -> int | None:
    """Index of the last checkpoint of the middle third, or None with fewer than three."""
    count = len(band.ms)
    if count < 3:
        return None
    return math.ceil(2 * count / 3) - 1


def upper_drift_check(band: RatioBand, slack: float) -> FlatnessCheck:
    middle = _middle_end(band)
    if middle is None:
        return FlatnessCheck("upper_drift", 1.0, slack, True, "fewer than three checkpoints")
    value = band.sup / band.running_sup[middle]
    return FlatnessCheck("upper_drift", value, slack, value < slack)


def lower_positive_check(band: RatioBand | None) -> FlatnessCheck:
    if band is None:
        return FlatnessCheck("lower_positive", 0.0, 0.5, True, "no range-low checkpoints")
    middle = _middle_end(band)
    if middle is None:
        return FlatnessCheck(
            "lower_positive", band.inf, 0.0, band.inf > 0, "fewer than three checkpoints"
        )
    mid = band.running_inf[middle]
    value = band.inf / mid if mid > 0 else 0.0
    return FlatnessCheck("lower_positive", value, 0.5, band.inf > 0 and value > 0.5)


def scaling_band_check(bands: Iterable[RatioBand], limit: float) -> FlatnessCheck:
    """K = max(sup, 1/inf) over the f-scaling ratios must stay below ``limit``."""
    spread = max(max(band.sup, 1 / band.inf) if band.inf > 0 else math.inf for band in bands)
    return FlatnessCheck("scaling_band", spread, limit, spread < limit)


def band_summary(
    records: list[LilRecord],
    m_burnin: int,
    *,
    drift_slack: float = 2.0,
    band_limit: float = 8.0,
) -> BandSummary:
    if not records:
        raise ParameterError("Cannot summarize an empty record set")

    burnin = m_burnin
    top = max(record.m for record in records)
    if top < burnin:
        logger.warning("no checkpoint reaches burn-in m = %d; using m >= %d", burnin, top)
        burnin = top
    eligible = [record for record in records if record.m >= burnin]

    bands = [ratio_band(name, eligible, ratio) for name, ratio in RATIOS.items()]
    low = [record for record in eligible if record.tag is RangeTag.LOW]
    low_band = ratio_band(LOW_RANGE_BAND, low, RATIOS["r_lo_h"]) if low else None
    if low_band is not None:
        bands.append(low_band)

    checks = (
        upper_drift_check(bands[0], drift_slack),
        lower_positive_check(low_band),
        scaling_band_check(bands[2:4], band_limit),
    )
    tags = Counter(record.tag for record in eligible)
    frequencies = tuple((tag.value, tags[tag] / len(eligible)) for tag in RangeTag)
    return BandSummary(
        burnin=burnin,
        records=len(eligible),
        bands=tuple(bands),
        checks=checks,
        tag_frequencies=frequencies,
    )
