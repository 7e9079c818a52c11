"""Terminal rendering for group summaries, verification reports and stage events."""

from __future__ import annotations

import json
from collections.abc import Sequence
from typing import Any

from centlab.api_objects.types import VerificationReport
from centlab.exports.json_report import dumps, reports_payload
from centlab.internal.events import InternalEvent

try:
    from rich.console import Console
    from rich.panel import Panel
    from rich.table import Table

    _HAS_RICH = True
except ImportError:
    _HAS_RICH = False


def _compact(value: Any) -> str:
    return json.dumps(value, ensure_ascii=True, sort_keys=True, default=str)


def print_group_summary(summary: dict[str, Any]) -> None:
    if not _HAS_RICH:
        print(" ".join(f"{key}={summary[key]}" for key in summary))
        return

    console = Console()
    table = Table(show_header=False, box=None)
    table.add_column("Field", style="bold cyan")
    table.add_column("Value")
    for key, value in summary.items():
        table.add_row(key, value if isinstance(value, str) else _compact(value))
    console.print(Panel(table, title=str(summary.get("name", "group")), border_style="cyan"))


def print_group_json(summaries: Sequence[dict[str, Any]]) -> None:
    print(dumps({"groups": list(summaries)}), end="")


def _headline(report: VerificationReport) -> str:
    parts = [report.suite, str(report.family.get("name", "-"))]
    if report.cent is not None and "predicted" in report.cent:
        relation = "=" if report.cent.get("match") else "!="
        parts.append(f"cent {report.cent['cent_count']} {relation} {report.cent['predicted']}")
    if report.graph is not None:
        parts.append(f"graph {report.graph['vertices']} vertices vs {report.graph['spec_name']}")
    return " | ".join(parts)


def print_reports(reports: Sequence[VerificationReport], *, timings: bool = False) -> None:
    if not _HAS_RICH:
        for report in reports:
            status = "ok" if report.match else "MISMATCH"
            print(f"[{status}] {_headline(report)}")
            for check in report.checks:
                mark = "ok" if check.match else "!!"
                expected, computed = _compact(check.expected), _compact(check.computed)
                print(f"  {mark} {check.name}: expected={expected} computed={computed}")
                for line in check.detail:
                    print(f"       {line}")
            if report.graph and "stated_shape_match" in report.graph:
                print(f"  stated_shape_match={report.graph['stated_shape_match']}")
                for line in report.graph.get("stated_shape_diff", []):
                    print(f"       {line}")
            if timings and report.elapsed_ms:
                print(f"  elapsed_ms={_compact(report.elapsed_ms)}")
        return

    console = Console()
    for report in reports:
        style = "green" if report.match else "bold red"
        table = Table(show_header=True, header_style="bold cyan")
        table.add_column("Check", style="bold")
        table.add_column("Expected", overflow="fold")
        table.add_column("Computed", overflow="fold")
        table.add_column("Match")
        for check in report.checks:
            verdict = "[green]yes[/green]" if check.match else "[bold red]no[/bold red]"
            table.add_row(check.name, _compact(check.expected), _compact(check.computed), verdict)
            for line in check.detail:
                table.add_row("", f"[dim]{line}[/dim]", "", "")
        if report.graph and "stated_shape_match" in report.graph:
            table.add_row(
                "stated_shape_match",
                "true",
                _compact(report.graph["stated_shape_match"]),
                "[yellow]info[/yellow]",
            )
            for line in report.graph.get("stated_shape_diff", []):
                table.add_row("", f"[dim]{line}[/dim]", "", "")
        if timings and report.elapsed_ms:
            table.caption = f"elapsed_ms={_compact(report.elapsed_ms)}"
        console.print(Panel(table, title=_headline(report), border_style=style))


def print_reports_json(reports: Sequence[VerificationReport], *, timings: bool = False) -> None:
    print(dumps(reports_payload(reports, timings=timings)), end="")


def print_internal_events(events: list[InternalEvent]) -> None:
    if not events:
        return

    if not _HAS_RICH:
        for event in events:
            print(f"{event.ts.isoformat()} {event.topic} {event.payload}")
        return

    console = Console()
    table = Table(title="Recent Internal Events", show_header=True, header_style="bold cyan")
    table.add_column("Time")
    table.add_column("Topic")
    table.add_column("Payload", overflow="fold")
    for event in events:
        table.add_row(
            event.ts.isoformat(timespec="seconds"),
            event.topic,
            _compact(event.payload),
        )
    console.print(table)
