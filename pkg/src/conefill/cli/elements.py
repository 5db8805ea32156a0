"""Reusable CLI elements: number formatting, CSV/JSON writers and rich tables."""

import csv
import io
import json
import math
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import click
from rich.console import Console
from rich.table import Table

from conefill.checks import CheckResult, ConstantRow

# Width used when a table is written to a file instead of a terminal
FILE_TABLE_WIDTH = 120

Record = Mapping[str, Any]


def format_float(value: float) -> str:
    """Format a float with 17 significant digits (exact round trip)."""
    return f"{value:.17g}"


def _cell(value: Any) -> str:  # noqa: ANN401
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def to_csv(columns: Sequence[str], records: Sequence[Record]) -> str:
    """Render records as CSV with a header row and 17-digit floats.

    Args:
        columns: Column names, in output order
        records: Rows keyed by column name

    Returns:
        CSV text with "\\n" line endings
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_cell(record[name]) for name in columns])
    return buffer.getvalue()


def _json_safe(value: Any) -> Any:  # noqa: ANN401
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Mapping):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_json_safe(v) for v in value]
    return value


def to_json(payload: Any) -> str:  # noqa: ANN401
    """Render a payload as indented JSON; non-finite floats become null."""
    return json.dumps(_json_safe(payload), indent=2) + "\n"


def emit_text(text: str, output_path: Path | None) -> None:
    """Write text to a file, or to stdout when no path is given."""
    if output_path is None:
        click.echo(text, nl=False)
        return
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(text, encoding="utf-8")
    click.secho(f"Wrote {output_path}", fg="green", err=True)


def emit_table(table: Table, output_path: Path | None) -> None:
    """Print a rich table to the terminal, or as plain text to a file."""
    if output_path is None:
        Console().print(table)
        return
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with output_path.open("w", encoding="utf-8") as f:
        Console(file=f, width=FILE_TABLE_WIDTH, no_color=True).print(table)
    click.secho(f"Wrote {output_path}", fg="green", err=True)


def records_table(
    title: str, columns: Sequence[str], records: Sequence[Record]
) -> Table:
    """Generic table with one column per record key."""
    table = Table(title=title)
    for name in columns:
        table.add_column(name, justify="right")
    for record in records:
        table.add_row(*(_cell(record[name]) for name in columns))
    return table


def constants_table(rows: Sequence[ConstantRow]) -> Table:
    """Computed constants next to their reference values."""
    table = Table(title="Reference constants")
    table.add_column("Constant", style="cyan")
    table.add_column("Computed", justify="right")
    table.add_column("Reference", justify="right")
    table.add_column("|Diff|", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Status")
    for row in rows:
        status = "[green]✓ ok[/green]" if row.ok else "[red]✗ breach[/red]"
        table.add_row(
            row.name,
            f"{row.computed:.10g}",
            f"{row.reference:g}",
            f"{row.diff:.2e}",
            f"{row.tolerance:g}",
            status,
        )
    return table


def checks_table(results: Sequence[CheckResult]) -> Table:
    """Pass/fail table of the invariant suite."""
    table = Table(title="Invariant checks")
    table.add_column("Group", style="cyan")
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Detail")
    for result in results:
        verdict = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(result.group, result.name, verdict, result.detail)
    return table
