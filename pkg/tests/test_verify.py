from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import pytest

from centlab.constants import QUOTIENT_ABELIAN, QUOTIENT_NONABELIAN
from centlab.errors import DescriptorError
from centlab.internal.events import EventBus
from centlab.verify import VerificationRunner, VerifyOptions


def _dicts(reports) -> list[dict]:
    return [report.to_dict() for report in reports]


def test_threaded_run_keeps_input_order() -> None:
    sequential = VerificationRunner(VerifyOptions(threads=1)).run("all", [2], n_values=[1, 2])
    threaded = VerificationRunner(VerifyOptions(threads=3)).run("all", [2], n_values=[1, 2])
    assert _dicts(sequential) == _dicts(threaded)
    assert [r.suite for r in sequential] == [
        "thm1", "thm2", "tables", "lemmas", "lemmas", "conjecture", "conjecture"
    ]
    assert all(r.match for r in sequential)


def test_unknown_suite() -> None:
    with pytest.raises(ValueError, match="Unsupported verification suite"):
        VerificationRunner().run("thm9", [2])


def test_exemplar_kinds() -> None:
    runner = VerificationRunner()
    assert runner.exemplar_kinds(2, None) == [QUOTIENT_ABELIAN]
    assert runner.exemplar_kinds(3, None) == [QUOTIENT_ABELIAN, QUOTIENT_NONABELIAN]
    assert runner.exemplar_kinds(3, 3) == [QUOTIENT_NONABELIAN]
    with pytest.raises(DescriptorError):
        runner.exemplar_kinds(2, 2)
    with pytest.raises(DescriptorError):
        runner.exemplar_kinds(4, None)


def test_stage_events_and_timings() -> None:
    bus = EventBus()
    seen: list[str] = []
    bus.subscribe("stage.completed", lambda event: seen.append(event.payload["stage"]))
    (report,) = VerificationRunner(bus=bus).thm1(2)
    assert report.match
    assert seen == ["exemplar", "thm1"]
    assert "thm1" in report.elapsed_ms
    assert "elapsed_ms" not in report.to_dict()
    assert "elapsed_ms" in report.to_dict(timings=True)


def test_nonabelian_thm2_reports_stated_shape() -> None:
    reports = VerificationRunner().thm2(3, 3)
    (report,) = reports
    assert report.family["quotient_kind"] == QUOTIENT_NONABELIAN
    assert report.match
    assert report.graph is not None
    assert report.graph["vertices"] == 32
    assert report.graph["stated_shape_match"] is False
    assert report.graph["stated_shape_diff"]


def test_lemmas_at_p3_all_match() -> None:
    reports = VerificationRunner().lemmas(3)
    assert [r.suite for r in reports] == ["lemmas"] * 3
    assert all(r.match for r in reports), [m.to_dict() for r in reports for m in r.mismatches()]


def test_exemplar_build_does_not_hold_the_cache_lock() -> None:
    bus = EventBus()
    runner = VerificationRunner(bus=bus)
    nested: list[object] = []

    def on_start(event) -> None:
        # builds another exemplar while the first one is still being built
        if event.payload["stage"] == "exemplar" and not nested:
            nested.append(runner.exemplar(2, QUOTIENT_ABELIAN, 4))

    bus.subscribe("stage.started", on_start)
    outer = runner.exemplar(2, QUOTIENT_ABELIAN)
    assert outer is not None
    assert nested[0] is not None
    assert runner.exemplar(2, QUOTIENT_ABELIAN, 4) is nested[0]


def test_concurrent_exemplar_calls_share_one_result() -> None:
    runner = VerificationRunner()
    with ThreadPoolExecutor(max_workers=4) as pool:
        made = list(pool.map(lambda _: runner.exemplar(2, QUOTIENT_ABELIAN), range(8)))
    assert all(item is made[0] for item in made)


def test_options_carry_engine_limits() -> None:
    options = VerifyOptions(max_order=100, dense_table_limit=10, full_scan_limit=20)
    limits = options.build_limits()
    assert (limits.max_order, limits.dense_table_limit, limits.full_scan_limit) == (100, 10, 20)
    ex = VerificationRunner(options).exemplar(2, QUOTIENT_ABELIAN)
    assert ex is not None
    assert ex.group.backend == "rule"
