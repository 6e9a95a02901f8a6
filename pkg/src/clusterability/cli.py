"""Command-line interface.

Subcommands: ``assess`` a delimited file, ``simulate`` replicated
rejection-rate tables over the scenario catalog, ``bench`` per-method
runtimes, and ``list-scenarios``. Exit codes: 0 success, 1 usage error,
2 data/ingestion error, 3 statistical degeneracy.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .dataset import StandardizationMode, load_matrix
from .errors import (
    ContractError,
    DegenerateDataError,
    ParseError,
    ShapeError,
    SizeError,
)
from .experiment import ExperimentSpec, run_experiment, run_runtime_bench
from .pipeline import METHODS, AssessmentConfig, assess_all
from .report import (
    render_catalog,
    render_rejection,
    render_runtime,
    render_verdicts,
)
from .simgen import catalog_records, scenario_catalog

_STD_MODES = {
    "none": StandardizationMode.NONE,
    "center": StandardizationMode.CENTER,
    "zscore": StandardizationMode.ZSCORE,
    "center-and-unit-variance": StandardizationMode.ZSCORE,
}

_ALL_ROWS = tuple(sc.row_id for sc in scenario_catalog())


def _parse_methods(spec: str) -> tuple:
    if spec.strip().lower() == "all":
        return METHODS
    names = tuple(dict.fromkeys(s.strip() for s in spec.split(",") if s.strip()))
    unknown = [m for m in names if m not in METHODS]
    if unknown:
        raise click.UsageError(
            f"unknown method(s) {', '.join(unknown)}; choose from {', '.join(METHODS)} or 'all'"
        )
    if not names:
        raise click.UsageError("empty method list")
    return names


def _parse_rows(spec: str) -> tuple:
    if spec.strip().lower() == "all":
        return _ALL_ROWS
    rows = []
    try:
        for token in spec.split(","):
            token = token.strip()
            if not token:
                continue
            if "-" in token:
                lo, hi = token.split("-", 1)
                rows.extend(range(int(lo), int(hi) + 1))
            else:
                rows.append(int(token))
    except ValueError:
        raise click.UsageError(f"could not parse row list {spec!r}") from None
    bad = [r for r in rows if r not in _ALL_ROWS]
    if bad:
        raise click.UsageError(f"unknown scenario row(s) {bad}; valid rows are 1-31")
    if not rows:
        raise click.UsageError("empty row list")
    return tuple(dict.fromkeys(rows))


def _load_config_file(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"could not read config file {path}: {exc}") from None
    if not isinstance(loaded, dict):
        raise click.UsageError("config file must hold a JSON object")
    return loaded


def _build_config(config_file, **overrides) -> AssessmentConfig:
    fields = dict(_load_config_file(config_file)) if config_file else {}
    return _build_config_fields(fields, **overrides)


def _build_config_fields(fields, **overrides) -> AssessmentConfig:
    if "standardization" in fields and isinstance(fields["standardization"], str):
        try:
            fields["standardization"] = _STD_MODES[fields["standardization"]]
        except KeyError:
            raise click.UsageError(
                f"unknown standardization {fields['standardization']!r}"
            ) from None
    for key, value in overrides.items():
        if value is not None:
            fields[key] = value
    try:
        return AssessmentConfig(**fields)
    except (TypeError, ContractError) as exc:
        raise click.UsageError(f"bad configuration: {exc}") from None


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _default_workers() -> int:
    raw = os.environ.get("CLUSTERABILITY_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@click.group(name="clusterability")
def cli():
    """Decide whether a dataset is clusterable before clustering it."""


@cli.command("assess")
@click.option("--input", "input_path", required=True, type=click.Path(), help="Delimited data file.")
@click.option("--header", is_flag=True, help="Skip a single header line.")
@click.option("--methods", default="all", show_default=True, help="Comma-separated method ids or 'all'.")
@click.option("--alpha", type=float, default=None, help="Significance level (default 0.05).")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Random seed (default 0).")
@click.option(
    "--standardize",
    type=click.Choice(sorted(_STD_MODES)),
    default=None,
    help="Column standardization before analysis (default none).",
)
@click.option("--format", "fmt", type=click.Choice(["plain", "csv", "json"]), default="plain", show_default=True)
@click.option("--hopkins-runs", type=int, default=None, help="Repeated Hopkins evaluations for standing datasets (default 100).")
@click.option("--delimiter", default=None, help="Explicit cell delimiter (auto-detects comma/tab).")
@click.option("--config", "config_file", type=click.Path(), default=None, help="JSON file of AssessmentConfig fields.")
@click.option("--out", "out_path", type=click.Path(), default=None, help="Write output here instead of stdout.")
@click.option("--continue-on-error", is_flag=True, help="Report failed methods instead of aborting.")
def assess_cmd(
    input_path,
    header,
    methods,
    alpha,
    seed,
    standardize,
    fmt,
    hopkins_runs,
    delimiter,
    config_file,
    out_path,
    continue_on_error,
):
    """Run clusterability methods on a delimited data file."""
    method_list = _parse_methods(methods)
    fields = dict(_load_config_file(config_file)) if config_file else {}
    # File mode runs Hopkins repeatedly unless the file or flag says otherwise.
    fields.setdefault("hopkins_runs", 100)
    config = _build_config_fields(
        fields,
        alpha=alpha,
        seed=seed,
        standardization=_STD_MODES[standardize] if standardize else None,
        hopkins_runs=hopkins_runs,
    )
    try:
        with open(input_path, "rb") as fh:
            data = load_matrix(fh, has_header=header, delimiter=delimiter)
    except OSError as exc:
        raise ParseError(f"cannot read {input_path}: {exc}") from None
    results = assess_all(data, method_list, config, continue_on_error=continue_on_error)
    _emit(render_verdicts(results, config.alpha, config.seed, fmt), out_path)


@cli.command("simulate")
@click.option("--rows", default="all", show_default=True, help="Scenario rows, e.g. '1,4,25-28' or 'all'.")
@click.option("--methods", default="all", show_default=True)
@click.option("--replicates", type=int, default=200, show_default=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["plain", "csv", "json"]), default="plain", show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--workers", type=int, default=None, help="Replicate-level parallelism (default $CLUSTERABILITY_WORKERS or 1).")
@click.option("--config", "config_file", type=click.Path(), default=None, help="JSON file of AssessmentConfig fields.")
def simulate_cmd(rows, methods, replicates, alpha, seed, fmt, out_path, workers, config_file):
    """Replicated rejection-proportion table over the scenario catalog."""
    config = _build_config(config_file) if config_file else None
    spec = ExperimentSpec(
        rows=_parse_rows(rows),
        methods=_parse_methods(methods),
        replicates=replicates,
        alpha=alpha,
        seed=seed,
        workers=workers if workers is not None else _default_workers(),
        config=config,
    )
    table = run_experiment(spec)
    _emit(render_rejection(table, fmt), out_path)


@cli.command("bench")
@click.option("--rows", required=True, help="Scenario rows, e.g. '1,6,11'.")
@click.option("--methods", default="all", show_default=True)
@click.option("--repeats", type=int, default=100, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["plain", "csv", "json"]), default="plain", show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--config", "config_file", type=click.Path(), default=None)
def bench_cmd(rows, methods, repeats, seed, fmt, out_path, config_file):
    """Mean wall-clock seconds of each method on fresh scenario draws."""
    config = _build_config(config_file) if config_file else None
    table = run_runtime_bench(
        rows=_parse_rows(rows),
        methods=_parse_methods(methods),
        repeats=repeats,
        seed=seed,
        config=config,
    )
    _emit(render_runtime(table, fmt), out_path)


@cli.command("list-scenarios")
@click.option("--format", "fmt", type=click.Choice(["plain", "csv", "json"]), default="plain", show_default=True)
def list_scenarios_cmd(fmt):
    """Print the simulation scenario catalog."""
    click.echo(render_catalog(catalog_records(), fmt), nl=False)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.exceptions.Abort:
        return 1
    except click.exceptions.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except (ParseError, ShapeError, SizeError) as exc:
        click.echo(f"data error: {exc}", err=True)
        return 2
    except DegenerateDataError as exc:
        click.echo(f"degenerate data: {exc}", err=True)
        return 3
    except ContractError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
