"""Command-line entry points.

Exit codes: 0 ok, 1 violation found, 2 usage error, 3 resource budget or
tier exceeded.
"""

from __future__ import annotations

import json
import sys

import click

from .census import (
    THEOREMS,
    _oracle_campaign,
    analyze as analyze_graph,
    default_jobs,
    run_census,
    run_verification,
    write_fixtures,
)
from .errors import ResourceBudgetError, RouteDisagreementError, TierExceededError
from .graph6 import parse_edge_list, parse_graph6


def _fail_budget(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(3)


@click.group()
def main() -> None:
    """Exact invariants of binomial edge ideals of small graphs."""


@main.command("analyze")
@click.option("--edges", "edges_text", help="edge list 'n;a-b,c-d,...' (1-based)")
@click.option("--graph6", "graph6_text", help="graph6 string")
@click.option("--json", "as_json", is_flag=True, help="emit one JSON object")
@click.option("--best-effort", is_flag=True, help="allow the n=8 scan tier")
def analyze_cmd(edges_text, graph6_text, as_json, best_effort) -> None:
    """Full pipeline on a single graph."""
    if bool(edges_text) == bool(graph6_text):
        raise click.UsageError("give exactly one of --edges / --graph6")
    try:
        if edges_text:
            G = parse_edge_list(edges_text)
        else:
            G = parse_graph6(graph6_text.encode("ascii"))
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    try:
        record = analyze_graph(G, best_effort)
    except (TierExceededError, ResourceBudgetError) as exc:
        _fail_budget(exc)
        return
    except RouteDisagreementError as exc:
        click.echo(f"ROUTE DISAGREEMENT: {exc}", err=True)
        sys.exit(1)
    if as_json:
        click.echo(record.to_json())
    else:
        d = json.loads(record.to_json())
        width = max(len(k) for k in d)
        for k, v in d.items():
            click.echo(f"{k:<{width}}  {v}")


@main.command("census")
@click.option("--max-n", type=int, required=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--jobs", type=int, default=None, help="workers (default: BEI_JOBS or all cores)")
@click.option("--best-effort", is_flag=True, help="allow n=8")
def census_cmd(max_n, out_path, jobs, best_effort) -> None:
    """All connected classes with edges up to --max-n, as sorted JSONL."""
    try:
        records = run_census(max_n, out_path, jobs or default_jobs(), best_effort)
    except (TierExceededError, ResourceBudgetError, ValueError) as exc:
        _fail_budget(exc)
        return
    click.echo(f"wrote {len(records)} records to {out_path}")


@main.command("verify")
@click.option("--theorem", "theorem_id", required=True)
@click.option("--max-n", type=int, required=True)
@click.option("--jobs", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def verify_cmd(theorem_id, max_n, jobs, as_json) -> None:
    """Exhaustive sweep of one statement over its graph class."""
    if theorem_id not in THEOREMS:
        raise click.UsageError(
            f"unknown theorem {theorem_id!r}; choose from: " + ", ".join(sorted(THEOREMS))
        )
    try:
        report = run_verification(theorem_id, max_n, jobs or default_jobs())
    except (TierExceededError, ResourceBudgetError) as exc:
        _fail_budget(exc)
        return
    if as_json:
        click.echo(json.dumps(report.to_json()))
    else:
        click.echo(
            f"{report.theorem:<28} tier n<={report.tier}  "
            f"instances {report.instances:<6} violations {len(report.violations):<3} "
            f"({report.wall_time:.1f}s)"
        )
        for v in report.violations:
            click.echo(f"  VIOLATION {v['graph6']} {v['detail']}")
    sys.exit(0 if report.ok() else 1)


@main.command("oracle")
@click.option(
    "--check",
    required=True,
    type=click.Choice(["primary-decomposition", "colon", "initial", "ohtani"]),
)
@click.option("--max-n", type=int, required=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="write {graph6, labeling, check, ok} JSONL fixtures here")
def oracle_cmd(check, max_n, out_path) -> None:
    """Symbolic certification campaign over all labeled graphs in the tier."""
    try:
        instances, violations, fixtures = _oracle_campaign(check, max_n)
    except (TierExceededError, ResourceBudgetError) as exc:
        _fail_budget(exc)
        return
    if out_path:
        write_fixtures(fixtures, out_path)
    click.echo(f"{check}: {instances} instances, {len(violations)} violations")
    for v in violations:
        click.echo(f"  VIOLATION {v['graph6']} {v['detail']}")
    sys.exit(0 if not violations else 1)


if __name__ == "__main__":
    main()
