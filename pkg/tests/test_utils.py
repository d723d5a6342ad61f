import json
import logging

import pytest

from errors import InputFormatError, SiteParseError
from exact_core import QVector, rat
from performance_monitor import PerformanceMonitor
from progress_tracking import create_progress_tracker
from utils import (Timer, export_results_to_json, format_duration, parse_rational, parse_site, parse_vector,
                   rational_to_decimal, write_text_output)


def test_parse_rational():
    assert parse_rational("3/-6") == rat(-1, 2)
    assert parse_rational(" 7 ") == 7
    assert parse_rational("-2 / 4") == rat(-1, 2)


@pytest.mark.parametrize("text", ["1.5", "1e3", "a/b", "", "1/"])
def test_parse_rational_rejects_inexact_literals(text):
    with pytest.raises(SiteParseError):
        parse_rational(text)


def test_parse_site():
    assert parse_site("5,2/3,-1") == QVector.of(5, rat(2, 3), -1)
    with pytest.raises(SiteParseError):
        parse_site("  ")
    with pytest.raises(SiteParseError):
        parse_site("1,,2")


@pytest.mark.parametrize("text", ["1/0", "3, 1/0", "-2/ 0"])
def test_zero_denominator_is_a_parse_error(text):
    with pytest.raises(SiteParseError):
        parse_site(text)


def test_parse_vector():
    assert parse_vector([1, "-1/2"]) == QVector.of(1, rat(-1, 2))
    with pytest.raises(SiteParseError):
        parse_vector([True, 0])


def test_rational_to_decimal():
    assert rational_to_decimal(rat(1, 3), 6) == "0.333333"
    assert rational_to_decimal(rat(-1, 2)) == "-0.5"
    assert rational_to_decimal(rat(4)) == "4"
    assert rational_to_decimal(rat(0)) == "0"


def test_format_duration():
    assert format_duration(12.34) == "12.3s"
    assert format_duration(90) == "1.5m"
    assert format_duration(7200) == "2.0h"


def test_timer_logs(caplog):
    with caplog.at_level(logging.INFO):
        with Timer("Sorting", logging.getLogger("timer-test")) as timer:
            pass
    assert timer.duration >= 0
    assert "Sorting completed" in caplog.text


def test_json_export_is_deterministic(tmp_path):
    results = {"b": 1, "a": [rat(1, 2)]}
    assert export_results_to_json(results) == export_results_to_json(results)
    path = tmp_path / "nested" / "out.json"
    assert export_results_to_json({"count": 3}, str(path)) == str(path)
    assert json.loads(path.read_text()) == {"count": 3}
    with pytest.raises(InputFormatError):
        write_text_output(str(tmp_path), "x")


def test_progress_tracker():
    tracker = create_progress_tracker("suite", work_units=4)
    tracker.update("starting", "go")
    tracker.advance("one")
    halfway = tracker.current_progress
    tracker.advance("two")
    assert 0 < halfway < tracker.current_progress < 100
    tracker.complete({"rows": 4})
    assert tracker.completed and tracker.current_progress == 100
    assert tracker.history[-1]["step"] == "complete"


def test_progress_tracker_error():
    tracker = create_progress_tracker("export", work_units=2, unit_phase="exporting")
    tracker.set_error("no polytope")
    assert tracker.error_occurred


def test_performance_monitor_counts():
    monitor = PerformanceMonitor()
    monitor.update_metrics(lp_calls=5)
    monitor.start_run("cells", 36)
    monitor.update_metrics(pairs_evaluated=36, lp_calls=3, closed_form_calls=1, cells_found=7)
    report = monitor.finish_run()
    assert report["pairs_evaluated"] == 36
    assert report["lp_calls"] == 3
    assert report["lp_share_percent"] == 75
    assert report["cells_found"] == 7
    assert report["processing_mode"] == "sequential"
    assert monitor.finish_run() == {}


def test_performance_monitor_rejects_unknown_counters():
    with pytest.raises(KeyError):
        PerformanceMonitor().update_metrics(games_analyzed=1)
