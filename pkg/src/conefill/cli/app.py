"""Command-line interface for conefill."""

import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, NoReturn, TypeVar

import click
from pydantic import ValidationError

from conefill.bounds.errors import DomainError
from conefill.checks import constant_rows, run_checks
from conefill.cli import elements, flows
from conefill.config import ConfigError, Configurator
from conefill.models import Fields, RunConfig
from conefill.slopes.models import SlopeError
from conefill.utils.env import get_log_path
from conefill.utils.logging import setup_logging

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

# Exit status contract
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

# Errors that mean the input was wrong rather than the program
USAGE_ERRORS = (DomainError, ConfigError, ValidationError, SlopeError)

FORMAT_CHOICES = ["table", "csv", "json"]

DEFAULTS = Fields(RunConfig)


def format_option(f: F) -> F:
    """Shared --format option decorator."""
    return click.option(
        "--format",
        "output_format",
        type=click.Choice(FORMAT_CHOICES, case_sensitive=False),
        default=None,
        help="Output format (default depends on the command)",
    )(f)


def out_option(f: F) -> F:
    """Shared --out option decorator."""
    return click.option(
        "--out",
        "output_path",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="Write output to this file instead of stdout",
    )(f)


def multi_option(f: F) -> F:
    """Shared --multi/--single option decorator."""
    return click.option(
        "--multi/--single",
        "multi_cusp",
        default=None,
        help="Use the multi-cusp packing constant (default: single)",
    )(f)


def _setup_logging() -> None:
    """Setup logging to the user's cache directory.

    Truncates log file on each run to keep it manageable.
    """
    setup_logging(get_log_path())


def _fail(message: str, code: int = EXIT_USAGE) -> NoReturn:
    click.secho(message, fg="red", err=True)
    sys.exit(code)


def _resolve(ctx: click.Context, **overrides: Any) -> RunConfig:  # noqa: ANN401
    """Build the RunConfig for a command: flags > config file > defaults."""
    obj = ctx.ensure_object(dict)
    merged = {**obj.get("overrides", {}), **overrides}
    return Configurator(obj.get("config_path")).resolve(merged)


def _output_format(config: RunConfig, default: str) -> str:
    return config.output_format or default


@click.group()
@click.version_option(package_name="conefill")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Config file (default: $XDG_CONFIG_HOME/conefill/config.json)",
)
@click.option(
    "--tol-quad",
    type=float,
    default=None,
    help=f"Quadrature tolerance (default: {DEFAULTS.quad_tol.default:g})",
)
@click.option(
    "--tol-root",
    type=float,
    default=None,
    help=f"Root-finding tolerance (default: {DEFAULTS.root_tol.default:g})",
)
@click.option(
    "--seed",
    type=int,
    default=None,
    help=f"Seed for random cusp shapes (default: {DEFAULTS.seed.default})",
)
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: Path | None,
    tol_quad: float | None,
    tol_root: float | None,
    seed: int | None,
) -> None:
    """conefill - quantitative bounds for hyperbolic Dehn filling."""
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path
    ctx.obj["overrides"] = {"quad_tol": tol_quad, "root_tol": tol_root, "seed": seed}


@cli.command()
@format_option
@out_option
@click.pass_context
def constants(
    ctx: click.Context, output_format: str | None, output_path: Path | None
) -> None:
    """Recompute the reference constants and compare with published values."""
    try:
        config = _resolve(ctx, output_format=output_format, output_path=output_path)
        rows = constant_rows(flows.tolerances(config))
    except USAGE_ERRORS as e:
        _fail(f"Error: {e}")

    fmt = _output_format(config, "table")
    if fmt == "table":
        elements.emit_table(elements.constants_table(rows), config.output_path)
    elif fmt == "csv":
        records = [
            {
                "name": r.name,
                "computed": r.computed,
                "reference": r.reference,
                "diff": r.diff,
                "tolerance": r.tolerance,
                "ok": r.ok,
            }
            for r in rows
        ]
        columns = ["name", "computed", "reference", "diff", "tolerance", "ok"]
        elements.emit_text(elements.to_csv(columns, records), config.output_path)
    else:
        payload = {
            r.name: {
                "computed": r.computed,
                "reference": r.reference,
                "diff": r.diff,
                "tolerance": r.tolerance,
                "ok": r.ok,
            }
            for r in rows
        }
        elements.emit_text(elements.to_json(payload), config.output_path)

    breaches = [r.name for r in rows if not r.ok]
    if breaches:
        logger.warning("Constants out of tolerance: %s", ", ".join(breaches))
        _fail(f"Constants out of tolerance: {', '.join(breaches)}")


@cli.command()
@click.option(
    "--lhat",
    "L_hat",
    type=click.FloatRange(min=0.0, min_open=True),
    required=True,
    help="Normalized length of the filling slope",
)
@multi_option
@click.option(
    "-n",
    "n_samples",
    type=int,
    default=None,
    help=f"Number of samples (default: {DEFAULTS.n_samples.default})",
)
@format_option
@out_option
@click.pass_context
def envelope(  # noqa: PLR0913
    ctx: click.Context,
    L_hat: float,  # noqa: N803
    multi_cusp: bool | None,
    n_samples: int | None,
    output_format: str | None,
    output_path: Path | None,
) -> None:
    """Sample deformation envelopes from the cusp to cone angle 2*pi."""
    try:
        config = _resolve(
            ctx,
            multi_cusp=multi_cusp,
            n_samples=n_samples,
            output_format=output_format,
            output_path=output_path,
        )
        curve = flows.run_envelope(L_hat, config)
    except USAGE_ERRORS as e:
        _fail(f"Error: {e}")

    warning = flows.truncation_warning(curve)
    if warning:
        click.secho(f"Warning: {warning}", fg="yellow", err=True)

    records = flows.envelope_records(curve)
    fmt = _output_format(config, "csv")
    if fmt == "csv":
        text = elements.to_csv(flows.ENVELOPE_COLUMNS, records)
        elements.emit_text(text, config.output_path)
    elif fmt == "json":
        payload = {
            "L_hat": curve.L_hat,
            "multi_cusp": curve.multi_cusp,
            "quad_tol": curve.quad_tol,
            "root_tol": curve.root_tol,
            "t_max": curve.t_max,
            "truncated": curve.truncated,
            "alpha_max": curve.alpha_max,
            "warning": warning,
            "samples": records,
        }
        elements.emit_text(elements.to_json(payload), config.output_path)
    else:
        table = elements.records_table(
            f"Envelope for L_hat = {L_hat:g}", flows.ENVELOPE_COLUMNS, records
        )
        elements.emit_table(table, config.output_path)


@cli.command()
@click.option(
    "--ell",
    type=click.FloatRange(min=0.0, min_open=True),
    default=None,
    help=(
        "Core length after filling, at most "
        f"{flows.core_length_ceiling():.{flows.CEILING_DIGITS}f} "
        f"({flows.core_length_ceiling(multi_cusp=True):.{flows.CEILING_DIGITS}f} "
        "with --multi)"
    ),
)
@click.option(
    "--sweep",
    type=(float, float, int),
    default=None,
    metavar="LO HI N",
    help="Sweep N core lengths from LO to HI (HI bounded like --ell)",
)
@multi_option
@format_option
@out_option
@click.pass_context
def volume(  # noqa: PLR0913
    ctx: click.Context,
    ell: float | None,
    sweep: tuple[float, float, int] | None,
    multi_cusp: bool | None,
    output_format: str | None,
    output_path: Path | None,
) -> None:
    """Bound the volume lost by filling, for one core length or a sweep."""
    if (ell is None) == (sweep is None):
        raise click.UsageError("Give exactly one of --ell or --sweep")

    try:
        config = _resolve(
            ctx,
            multi_cusp=multi_cusp,
            output_format=output_format,
            output_path=output_path,
        )
        if sweep is not None:
            values = flows.sweep_values(*sweep)
        elif ell is not None:
            values = [ell]
        results = flows.run_volume(values, config)
    except USAGE_ERRORS as e:
        _fail(f"Error: {e}")

    records = flows.volume_records(results)
    fmt = _output_format(config, "csv")
    if fmt == "csv":
        text = elements.to_csv(flows.VOLUME_COLUMNS, records)
        elements.emit_text(text, config.output_path)
    elif fmt == "json":
        payload = {"multi_cusp": config.multi_cusp, "rows": records}
        elements.emit_text(elements.to_json(payload), config.output_path)
    else:
        table = elements.records_table("Volume change", flows.VOLUME_COLUMNS, records)
        elements.emit_table(table, config.output_path)


@cli.command()
@click.option(
    "--shape",
    "shape_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help='Cusp shape JSON: {"v1": [x, y], "v2": [x, y]} or {"tau": [re, im]}',
)
@click.option(
    "--bound",
    type=click.FloatRange(min=0.0, min_open=True),
    default=None,
    help="Normalized length bound (default: the filling threshold)",
)
@multi_option
@format_option
@out_option
@click.pass_context
def slopes(  # noqa: PLR0913
    ctx: click.Context,
    shape_path: Path,
    bound: float | None,
    multi_cusp: bool | None,
    output_format: str | None,
    output_path: Path | None,
) -> None:
    """List slopes shorter than a bound on a cusp torus."""
    try:
        config = _resolve(
            ctx,
            multi_cusp=multi_cusp,
            output_format=output_format,
            output_path=output_path,
        )
        summary = flows.run_slopes(shape_path, bound, config)
    except USAGE_ERRORS as e:
        _fail(f"Error in {shape_path}: {e}")

    report = summary.report
    records = summary.records()
    fmt = _output_format(config, "table")
    if fmt == "csv":
        text = elements.to_csv(flows.SLOPE_COLUMNS, records)
        elements.emit_text(text, config.output_path)
    elif fmt == "json":
        payload = {
            "bound": report.bound,
            "multi_cusp": summary.multi_cusp,
            "count": report.count,
            "count_bound": summary.count_bound,
            "max_delta": report.max_delta,
            "min_ratio": report.min_ratio,
            "slopes": records,
        }
        elements.emit_text(elements.to_json(payload), config.output_path)
    else:
        title = (
            f"{report.count} slopes below {report.bound:.6g} "
            f"(bound {summary.count_bound}, max Δ {report.max_delta})"
        )
        table = elements.records_table(title, flows.SLOPE_COLUMNS, records)
        elements.emit_table(table, config.output_path)


@cli.command()
@format_option
@out_option
@click.pass_context
def check(
    ctx: click.Context, output_format: str | None, output_path: Path | None
) -> None:
    """Run the cross-module invariant suite."""
    try:
        config = _resolve(ctx, output_format=output_format, output_path=output_path)
    except USAGE_ERRORS as e:
        _fail(f"Error: {e}")

    results = run_checks(flows.tolerances(config), config.seed)
    fmt = _output_format(config, "table")
    if fmt == "table":
        elements.emit_table(elements.checks_table(results), config.output_path)
    elif fmt == "csv":
        records = [
            {"group": r.group, "name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results
        ]
        text = elements.to_csv(["group", "name", "passed", "detail"], records)
        elements.emit_text(text, config.output_path)
    else:
        payload = {
            "seed": config.seed,
            "passed": all(r.passed for r in results),
            "checks": [
                {
                    "group": r.group,
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                }
                for r in results
            ],
        }
        elements.emit_text(elements.to_json(payload), config.output_path)

    failed = [f"{r.group}/{r.name}" for r in results if not r.passed]
    if failed:
        _fail(f"{len(failed)} checks failed: {', '.join(failed)}", EXIT_CHECK_FAILED)


def main() -> None:
    """Main entry point for the CLI.

    Sets up logging and provides a generic catch-all error handler
    for unexpected errors.
    """
    _setup_logging()
    try:
        cli()
    except Exception:
        # Log the full traceback to the log file (details only in log)
        logger.exception("Fatal error occurred")

        # Show user-friendly error message (no exception details)
        click.secho(
            "\nFatal error occurred.",
            fg="red",
            err=True,
        )
        click.secho(
            f"Check logs for details: {get_log_path()}",
            fg="yellow",
            err=True,
        )

        sys.exit(1)


if __name__ == "__main__":
    main()
