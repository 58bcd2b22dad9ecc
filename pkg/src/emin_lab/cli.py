# src/emin_lab/cli.py
"""
Command-line front end built on click and rich.

Data (CSV, JSON reports) goes to stdout or to files under --out; panels, tables,
progress bars and log records go to stderr.
"""

import math
import sys
import time
from functools import wraps
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn
from rich.table import Table
from rich.theme import Theme

from emin_lab.config import (
    CSV_COLUMNS,
    DEFAULT_BETA,
    PROB_COLUMNS,
    SPREAD_COLUMNS,
    RunSettings,
    resolve_settings,
)
from emin_lab.core.errors import EminLabError
from emin_lab.core.models import Ensemble, InvariantResult, RunManifest, SuiteReport
from emin_lab.experiments.fig1 import (
    count_negative,
    g_grid,
    probability_checks,
    run_probability,
    run_scatter,
    scatter_checks,
    spread_profile,
)
from emin_lab.experiments.observation import example_obs1
from emin_lab.experiments.oneshot import evaluate_emin, evaluate_ergotropy
from emin_lab.experiments.registry import list_suites, run_suites
from emin_lab.reports.svg_report import render_probability_svg, render_scatter_svg, write_svg
from emin_lab.utils.formatters import (
    format_emin_json,
    format_emin_text,
    format_ergotropy_json,
    format_ergotropy_text,
    format_obs1_json,
    format_obs1_text,
    format_verify_json,
    format_verify_text,
    resolve_app_version,
)
from emin_lab.utils.log import configure_logging, get_logger
from emin_lab.utils.serialization import read_matrix, write_csv, write_manifest
from emin_lab.utils.utility import utc_timestamp

log = get_logger(__name__)

custom_theme = Theme({
    "info": "cyan",
    "warning": "yellow",
    "error": "bold red",
    "success": "bold green",
    "metric": "bold blue",
})

console = Console(theme=custom_theme, stderr=True)


class FiniteFloat(click.ParamType):
    """A float option that rejects nan and inf at parse time."""
    name = "float"

    def convert(self, value, param, ctx):
        try:
            number = float(value)
        except (TypeError, ValueError):
            self.fail(f"{value!r} is not a valid float", param, ctx)
        if not math.isfinite(number):
            self.fail(f"{value!r} is not finite", param, ctx)
        return number


FINITE_FLOAT = FiniteFloat()


def handle_library_errors(fn):
    """Report EminLabError as a one-line message and exit with status 1."""
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except EminLabError as e:
            console.print(f"[error]Error:[/] {e}")
            sys.exit(1)
    return wrapper


def _progress() -> Progress:
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TaskProgressColumn(),
        console=console,
    )


def _settings(ctx: click.Context, **overrides) -> RunSettings:
    try:
        return resolve_settings(ctx.obj.get("config"), **overrides)
    except ValueError as e:
        raise click.UsageError(str(e)) from e


def _prepare_out(out: Optional[str]) -> Optional[Path]:
    if not out:
        return None
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _finish_run(out_dir: Path, settings: RunSettings, parameters: dict, files: list[Path], started: float, started_at: str):
    manifest = RunManifest(
        command_line=list(sys.argv),
        master_seed=settings.seed,
        parameters=parameters,
        artifact_version=resolve_app_version(),
        wall_clock_seconds=round(time.perf_counter() - started, 3),
        started_at=started_at,
    )
    path = write_manifest(out_dir, manifest, files)
    console.print(f"[success]Wrote {len(files)} file(s) and {path.name} to {out_dir}[/]")


def display_checks(title: str, checks: list[InvariantResult]):
    if not checks:
        return
    table = Table(title=title, box=None, padding=(0, 2))
    table.add_column("Check", style="cyan")
    table.add_column("Failures", justify="right")
    table.add_column("Status", justify="center")
    table.add_column("Details")
    for c in checks:
        status = "[green]pass[/]" if c.passed else "[red]FAIL[/]"
        table.add_row(c.name, f"{c.failures}/{c.trials}", status, c.details)
    console.print(table)


def display_suite_summary(reports: list[SuiteReport]):
    for r in reports:
        table = Table(title=f"{r.suite_id} (seed {r.seed}, {r.duration_seconds or 0:.1f}s)", box=None, padding=(0, 2))
        table.add_column("Invariant", style="cyan")
        table.add_column("Failures", justify="right")
        table.add_column("Max deviation", justify="right")
        table.add_column("Tolerance", justify="right")
        table.add_column("Status", justify="center")
        for res in r.results:
            status = "[green]pass[/]" if res.passed else "[red]FAIL[/]"
            table.add_row(
                res.name, f"{res.failures}/{res.trials}",
                f"{res.max_deviation:.2e}", f"{res.tolerance:.0e}", status,
            )
        console.print(table)
        for res in r.results:
            if res.details and res.name == "bounds_audit":
                console.print(f"[info]{res.name}:[/] {res.details}")


# ---------------------------------------------------------------------------
# Shared options
# ---------------------------------------------------------------------------

def run_options(fn):
    options = [
        click.option("--samples", type=click.IntRange(min=1), default=2000, show_default=True, help="Samples per g."),
        click.option("--seed", type=click.IntRange(min=0), default=None, help="Master seed (falls back to EMIN_LAB_SEED)."),
        click.option("--field-dim", type=click.IntRange(min=2), default=None, help="Fock truncation of the field mode."),
        click.option("--ensemble", type=click.Choice([e.value for e in Ensemble]), default=None, help="Random state ensemble."),
        click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker threads."),
        click.option("--out", type=click.Path(file_okay=False), default=None, help="Directory for CSV, SVG and manifest."),
        click.option("--svg", is_flag=True, help="Also render an SVG plot (requires --out)."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


@click.group()
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Key-value settings file (same keys as the EMIN_LAB_* environment variables).")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr.")
@click.version_option(resolve_app_version(), prog_name="emin-lab")
@click.pass_context
def cli(ctx, config_file, verbose):
    """EMIN lab: ergotropy and measurement-induced nonlocality."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = config_file
    if verbose:
        configure_logging("DEBUG")


# ---------------------------------------------------------------------------
# fig1-scatter / fig1-prob
# ---------------------------------------------------------------------------

@cli.command("fig1-scatter")
@click.option("--g", "g", type=FINITE_FLOAT, required=True, help="Coupling strength.")
@run_options
@click.pass_context
@handle_library_errors
def fig1_scatter(ctx, g, samples, seed, field_dim, ensemble, threads, out, svg):
    """N_xi against N_geo for random states at one coupling g."""
    if svg and not out:
        raise click.UsageError("--svg needs --out")
    settings = _settings(ctx, seed=seed, field_dim=field_dim, ensemble=ensemble, threads=threads)
    started, started_at = time.perf_counter(), utc_timestamp()

    with _progress() as progress:
        task = progress.add_task(f"g = {g:g}", total=samples)
        records = run_scatter(g, samples, settings, lambda done, total: progress.update(task, completed=done))

    rows = [r.as_row() for r in records]
    out_dir = _prepare_out(out)
    if out_dir is None:
        _echo_csv(CSV_COLUMNS, rows)
    else:
        files = [out_dir / "scatter.csv", out_dir / "spread.csv"]
        write_csv(files[0], CSV_COLUMNS, rows)
        write_csv(files[1], SPREAD_COLUMNS, [b.as_row() for b in spread_profile(records)])
        if svg:
            files.append(write_svg(out_dir / "scatter.svg", render_scatter_svg(records, f"EMIN vs HS norm, g = {g:g}")))
        parameters = {"command": "fig1-scatter", "g": g, "samples": samples, **_settings_dict(settings)}
        _finish_run(out_dir, settings, parameters, files, started, started_at)

    negative = count_negative(records)
    console.print(Panel(
        f"[metric]{samples}[/] samples at g = {g:g}, seed {settings.seed}\n"
        f"min N_xi = {min(r.n_xi for r in records):.6g}, "
        f"P[N_xi < 0] = {negative / samples:.4f}",
        title="[bold blue]fig1-scatter[/]",
        expand=False,
    ))
    checks = scatter_checks(g, records)
    display_checks("Regime checks", checks)
    if not all(c.passed for c in checks):
        sys.exit(1)


@cli.command("fig1-prob")
@click.option("--g-min", type=FINITE_FLOAT, default=0.05, show_default=True)
@click.option("--g-max", type=FINITE_FLOAT, default=3.0, show_default=True)
@click.option("--g-steps", type=click.IntRange(min=1), default=12, show_default=True)
@run_options
@click.pass_context
@handle_library_errors
def fig1_prob(ctx, g_min, g_max, g_steps, samples, seed, field_dim, ensemble, threads, out, svg):
    """Probability of negative N_xi over a grid of couplings."""
    if svg and not out:
        raise click.UsageError("--svg needs --out")
    try:
        grid = g_grid(g_min, g_max, g_steps)
    except ValueError as e:
        raise click.UsageError(str(e)) from e
    settings = _settings(ctx, seed=seed, field_dim=field_dim, ensemble=ensemble, threads=threads)
    started, started_at = time.perf_counter(), utc_timestamp()

    with _progress() as progress:
        tasks = {}

        def update(g, done, total):
            if g not in tasks:
                tasks[g] = progress.add_task(f"g = {g:.3g}", total=total)
            progress.update(tasks[g], completed=done)

        rows = run_probability(grid, samples, settings, update)

    csv_rows = [[r.g, r.n_samples, r.n_negative, r.probability] for r in rows]
    out_dir = _prepare_out(out)
    if out_dir is None:
        _echo_csv(PROB_COLUMNS, csv_rows)
    else:
        files = [out_dir / "prob.csv"]
        write_csv(files[0], PROB_COLUMNS, csv_rows)
        if svg:
            files.append(write_svg(out_dir / "prob.svg", render_probability_svg(rows, "Probability of negative EMIN")))
        parameters = {
            "command": "fig1-prob", "g_min": g_min, "g_max": g_max, "g_steps": g_steps,
            "samples": samples, **_settings_dict(settings),
        }
        _finish_run(out_dir, settings, parameters, files, started, started_at)

    table = Table(title="P[N_xi < 0]", box=None, padding=(0, 2))
    table.add_column("g", justify="right", style="cyan")
    table.add_column("negative", justify="right")
    table.add_column("P", justify="right")
    for r in rows:
        table.add_row(f"{r.g:.4g}", f"{r.n_negative}/{r.n_samples}", f"{r.probability:.4f}")
    console.print(table)
    checks = probability_checks(rows)
    display_checks("Sweep checks", checks)
    if not all(c.passed for c in checks):
        sys.exit(1)


def _settings_dict(settings: RunSettings) -> dict:
    return {
        "seed": settings.seed,
        "field_dim": settings.field_dim,
        "ensemble": settings.ensemble,
        "threads": settings.threads,
    }


def _echo_csv(columns, rows):
    """CSV to stdout with the same rendering as the file writer."""
    stream = click.get_text_stream("stdout")
    write_csv(stream, columns, rows)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

@cli.command()
@click.argument("suite", type=click.Choice(list_suites()), default="all")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Master seed (falls back to EMIN_LAB_SEED).")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", help="Report format on stdout.")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Directory for verify.json and manifest.")
@click.pass_context
@handle_library_errors
def verify(ctx, suite, seed, fmt, out):
    """Run invariant suites; exit status 1 on any failure."""
    settings = _settings(ctx, seed=seed)
    started, started_at = time.perf_counter(), utc_timestamp()

    with _progress() as progress:
        tasks = {}

        def update(suite_id, done, total):
            if suite_id not in tasks:
                tasks[suite_id] = progress.add_task(suite_id, total=total)
            progress.update(tasks[suite_id], completed=done)

        reports = run_suites(suite, settings.seed, progress=update)

    display_suite_summary(reports)
    click.echo(format_verify_json(reports) if fmt == "json" else format_verify_text(reports))

    out_dir = _prepare_out(out)
    if out_dir is not None:
        path = out_dir / "verify.json"
        path.write_text(format_verify_json(reports) + "\n", encoding="utf-8")
        _finish_run(out_dir, settings, {"command": "verify", "suite": suite, "seed": settings.seed}, [path], started, started_at)

    if all(r.passed for r in reports):
        console.print("[success]All invariants hold.[/]")
    else:
        failures = sum(r.total_failures for r in reports)
        console.print(f"[error]{failures} failure(s).[/]")
        sys.exit(1)


# ---------------------------------------------------------------------------
# example-obs1
# ---------------------------------------------------------------------------

@cli.command("example-obs1")
@click.option("--alpha", type=FINITE_FLOAT, default=0.6, show_default=True, help="Amplitude of |00>, 0 < alpha < 1.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@handle_library_errors
def example_obs1_cmd(alpha, fmt):
    """Nonlocal energy locking: N_xi = 0 while N_geo = 2 alpha^2 beta^2."""
    if not 0.0 < alpha < 1.0:
        raise click.BadParameter("alpha must lie strictly between 0 and 1", param_hint="--alpha")
    report = example_obs1(alpha)
    click.echo(format_obs1_json(report) if fmt == "json" else format_obs1_text(report))
    if not report.passed:
        console.print("[error]Library output disagrees with the analytic values.[/]")
        sys.exit(1)


# ---------------------------------------------------------------------------
# One-shot commands
# ---------------------------------------------------------------------------

matrix_file = click.Path(exists=True, dir_okay=False)


@cli.command("ergotropy")
@click.option("--rho", "rho_file", type=matrix_file, required=True, help="Density matrix JSON.")
@click.option("--hamiltonian", "h_file", type=matrix_file, required=True, help="Hamiltonian JSON.")
@click.option("--dims", type=(click.IntRange(min=1), click.IntRange(min=1)), default=None, help="Subsystem dims n m.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@handle_library_errors
def ergotropy_cmd(rho_file, h_file, dims, fmt):
    """Energy, passive energy and ergotropy of a state."""
    evaluation = evaluate_ergotropy(read_matrix(rho_file), read_matrix(h_file), dims)
    click.echo(format_ergotropy_json(evaluation) if fmt == "json" else format_ergotropy_text(evaluation))


@cli.command("emin")
@click.option("--rho", "rho_file", type=matrix_file, required=True, help="Density matrix JSON.")
@click.option("--hamiltonian", "h_file", type=matrix_file, required=True, help="Hamiltonian JSON.")
@click.option("--dims", type=(click.IntRange(min=1), click.IntRange(min=1)), required=True, help="Subsystem dims n m.")
@click.option("--basis", "basis_file", type=matrix_file, default=None, help="Unitary whose columns are the measurement basis on A.")
@click.option("--beta", type=FINITE_FLOAT, default=None, help=f"Inverse temperature for the bounds (default {DEFAULT_BETA}).")
@click.option("--degeneracy-tol", type=FINITE_FLOAT, default=None, help="Gap below which marginal eigenvalues count as degenerate.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_context
@handle_library_errors
def emin_cmd(ctx, rho_file, h_file, dims, basis_file, beta, degeneracy_tol, fmt):
    """EMIN by every applicable route, with breakdown and entropy bounds."""
    settings = _settings(ctx, beta=beta, degeneracy_tol=degeneracy_tol)
    if settings.beta <= 0:
        raise click.BadParameter("beta must be positive", param_hint="--beta")
    basis = read_matrix(basis_file) if basis_file else None
    evaluation = evaluate_emin(
        read_matrix(rho_file), read_matrix(h_file), dims,
        basis_matrix=basis, beta=settings.beta, degeneracy_tol=settings.degeneracy_tol,
    )
    click.echo(format_emin_json(evaluation) if fmt == "json" else format_emin_text(evaluation))


def main():
    cli(obj={})


if __name__ == "__main__":
    main()
