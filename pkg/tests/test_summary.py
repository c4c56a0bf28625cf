from __future__ import annotations

import json
import logging

import pytest

from excursionlab.errors import ParameterError
from excursionlab.lil import band_summary, ratio_band, write_json
from excursionlab.lil.summary import (
    LOW_RANGE_BAND,
    RATIOS,
    lower_positive_check,
    scaling_band_check,
    upper_drift_check,
)
from excursionlab.models import LilRecord, RangeTag, RatioBand


def _record(m: int, *, up: float = 1.0, lo: float = 1.0, trial: int = 0, tag=RangeTag.HIGH):
    return LilRecord(
        trial=trial, m=m, n=2**m, range=100, s0=1, s0p=1, s1=1, s2=1, s3=1, s3t=1,
        D_up=up * 10.0, D_lo=lo * 5.0, g=10.0, h=5.0, fs_limsup=10.0, fs_liminf=5.0, tag=tag,
    )


def test_running_extrema() -> None:
    records = [_record(5, up=1.0), _record(6, up=2.0), _record(7, up=3.0)]
    band = ratio_band("r_up_g", records, RATIOS["r_up_g"])
    assert band.ms == (5, 6, 7)
    assert band.running_sup == pytest.approx((1.0, 2.0, 3.0))
    assert band.running_inf == pytest.approx((1.0, 1.0, 1.0))


def test_band_takes_extremes_across_trials() -> None:
    records = [_record(5, up=1.0), _record(5, up=4.0, trial=1), _record(6, up=0.5)]
    band = ratio_band("r_up_g", records, RATIOS["r_up_g"])
    assert band.running_sup == pytest.approx((4.0, 4.0))
    assert band.running_inf == pytest.approx((1.0, 0.5))


def test_empty_band_is_an_error() -> None:
    with pytest.raises(ParameterError):
        ratio_band("r_up_g", [], RATIOS["r_up_g"])
    with pytest.raises(ParameterError):
        band_summary([], 10)


def test_upper_drift() -> None:
    flat = RatioBand("r", (1, 2, 3), (1.0, 2.0, 3.0), (1.0, 1.0, 1.0))
    assert upper_drift_check(flat, 2.0).value == pytest.approx(1.5)
    assert upper_drift_check(flat, 2.0).passed
    growing = RatioBand("r", (1, 2, 3), (1.0, 1.0, 5.0), (1.0, 1.0, 1.0))
    assert not upper_drift_check(growing, 2.0).passed
    short = RatioBand("r", (1, 2), (1.0, 9.0), (1.0, 1.0))
    assert upper_drift_check(short, 2.0).passed


def test_lower_positive() -> None:
    assert lower_positive_check(None).passed
    stable = RatioBand("r", (1, 2, 3), (1.0, 1.0, 1.0), (1.0, 0.8, 0.6))
    assert lower_positive_check(stable).passed
    collapsing = RatioBand("r", (1, 2, 3), (1.0, 1.0, 1.0), (1.0, 0.8, 0.1))
    assert not lower_positive_check(collapsing).passed
    zero = RatioBand("r", (1, 2), (1.0, 1.0), (1.0, 0.0))
    assert not lower_positive_check(zero).passed


def test_scaling_band() -> None:
    bands = [
        RatioBand("a", (1,), (3.0,), (0.5,)),
        RatioBand("b", (1,), (1.0,), (0.25,)),
    ]
    check = scaling_band_check(bands, 8.0)
    assert check.value == pytest.approx(4.0)
    assert check.passed
    assert not scaling_band_check([RatioBand("c", (1,), (1.0,), (0.0,))], 8.0).passed


def test_band_summary_uses_burnin_and_low_range_band() -> None:
    records = [
        _record(4, up=100.0),
        _record(5),
        _record(6, tag=RangeTag.LOW, lo=0.9),
        _record(7, tag=RangeTag.LOW, lo=0.8),
    ]
    summary = band_summary(records, 5)
    assert summary.burnin == 5
    assert summary.records == 3
    assert summary.band("r_up_g").sup == pytest.approx(1.0)
    assert summary.band(LOW_RANGE_BAND).ms == (6, 7)
    assert dict(summary.tag_frequencies) == pytest.approx(
        {"range-high": 1 / 3, "range-low": 2 / 3, "neutral": 0.0}
    )
    assert summary.passed


def test_band_summary_falls_back_when_burnin_is_out_of_reach(caplog) -> None:
    with caplog.at_level(logging.WARNING):
        summary = band_summary([_record(4), _record(5)], 10)
    assert summary.burnin == 5
    assert summary.records == 1
    assert "burn-in" in caplog.text
    check = {c.name: c for c in summary.checks}["lower_positive"]
    assert check.detail == "no range-low checkpoints"


def test_summary_document_is_stable_json(tmp_path) -> None:
    summary = band_summary([_record(5), _record(6), _record(7)], 5)
    path = write_json(tmp_path / "summary.json", summary.to_dict())
    text = path.read_text(encoding="utf-8")
    assert text.endswith("}\n")
    payload = json.loads(text)
    assert payload["passed"] is True
    assert [check["name"] for check in payload["checks"]] == [
        "upper_drift",
        "lower_positive",
        "scaling_band",
    ]
