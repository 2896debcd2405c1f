"""Command-line surface: batch solving, foils, explanations, scenarios,
metrics, session driving, and the HTTP server.

Exit codes: 0 ok, 2 invalid input, 3 infeasible or unsolvable.
"""
from __future__ import annotations

import json
import sys

import click

from ..compare import ComparatorConfig, FactorSet, compare_allocations, compare_schedules, filter_critical
from ..domain import Site, load_domain
from ..explain import ExplainerConfig, explain
from ..foil import FoilQuery, build_foil
from ..planner import Cause, UnsolvableError, solution_from_json, solution_to_json, solve
from ..scenario import (
    Scenario,
    build_emergency_domain,
    generate_scenario,
    make_standard_scenarios,
)
from .store import Workbench, canonical_json

EXIT_INVALID = 2
EXIT_INFEASIBLE = 3


def _echo_json(doc) -> None:
    click.echo(json.dumps(doc, indent=2, sort_keys=True))


@click.group()
def main():
    """Contrastive-explanation workbench for multi-robot task allocation."""


@main.command("solve")
@click.argument("domain_file", type=click.Path(exists=True))
@click.option("-o", "--output", type=click.Path(), default=None)
def solve_cmd(domain_file, output):
    """Solve a domain file and print the solution JSON."""
    try:
        d = load_domain(domain_file)
        s = solve(d)
    except UnsolvableError as e:
        click.echo(f"unsolvable: {e}", err=True)
        sys.exit(EXIT_INFEASIBLE)
    except ValueError as e:
        click.echo(f"invalid input: {e}", err=True)
        sys.exit(EXIT_INVALID)
    doc = solution_to_json(d, s)
    if output:
        with open(output, "w") as f:
            f.write(canonical_json(doc))
    else:
        _echo_json(doc)


def _load_foil_inputs(domain_file, solution_file, foil_file):
    d = load_domain(domain_file)
    with open(solution_file) as f:
        s = solution_from_json(d, json.load(f))
    with open(foil_file) as f:
        q = FoilQuery.from_json(json.load(f))
    return d, s, q


@main.command("foil")
@click.argument("domain_file", type=click.Path(exists=True))
@click.argument("solution_file", type=click.Path(exists=True))
@click.argument("foil_file", type=click.Path(exists=True))
def foil_cmd(domain_file, solution_file, foil_file):
    """Evaluate a foil allocation and print the outcome JSON."""
    try:
        d, s, q = _load_foil_inputs(domain_file, solution_file, foil_file)
        outcome = build_foil(d, s, q)
    except ValueError as e:
        click.echo(f"invalid input: {e}", err=True)
        sys.exit(EXIT_INVALID)
    doc = {
        "feasible": outcome.feasible,
        "cause": outcome.cause.to_json() if outcome.cause else None,
        "solution": solution_to_json(d, outcome.solution) if outcome.solution else None,
    }
    _echo_json(doc)
    if not outcome.feasible:
        sys.exit(EXIT_INFEASIBLE)


@main.command("explain")
@click.argument("domain_file", type=click.Path(exists=True))
@click.argument("solution_file", type=click.Path(exists=True))
@click.argument("foil_file", type=click.Path(exists=True))
@click.option("--z", type=float, default=0.1, show_default=True, help="critical-factor threshold")
@click.option("--text", is_flag=True, help="print plain text instead of JSON")
def explain_cmd(domain_file, solution_file, foil_file, z, text):
    """Run foil + compare + render and print the explanation."""
    try:
        d, s, q = _load_foil_inputs(domain_file, solution_file, foil_file)
        outcome = build_foil(d, s, q)
        fc = None
        if outcome.feasible:
            factors = FactorSet(
                tuple(compare_allocations(s.allocation, outcome.allocation, d)),
                tuple(compare_schedules(s.schedule, outcome.solution.schedule, d, ComparatorConfig(z=z))),
            )
            fc = filter_critical(factors, z)
        result = explain(d, s, outcome, fc, ExplainerConfig(z=z))
    except ValueError as e:
        click.echo(f"invalid input: {e}", err=True)
        sys.exit(EXIT_INVALID)
    if text:
        click.echo(result.plain_text)
    else:
        _echo_json(result.to_json())


@main.group("scenario")
def scenario_group():
    """Scenario generation."""


@scenario_group.command("gen")
@click.option("--tuple", "tuple_text", required=True, help="errors as q,y,phi e.g. 3,1,1")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--label", default=None)
@click.option("--out", type=click.Path(), default=None)
def scenario_gen(tuple_text, seed, label, out):
    """Corrupt the emergency-response fixture with a seeded error tuple."""
    try:
        parts = tuple(int(x) for x in tuple_text.split(","))
        if len(parts) != 3:
            raise ValueError("error tuple needs exactly three counts")
        truth = build_emergency_domain(seed=seed)
        scenario = generate_scenario(truth, parts, seed=seed, label=label)
    except ValueError as e:
        click.echo(f"invalid input: {e}", err=True)
        sys.exit(EXIT_INVALID)
    doc = scenario.to_json()
    if out:
        with open(out, "w") as f:
            f.write(canonical_json(doc))
    else:
        _echo_json(doc)


@scenario_group.command("standard")
@click.option("--data", type=click.Path(), required=True, help="workbench data directory")
@click.option("--base-seed", type=int, default=7, show_default=True)
def scenario_standard(data, base_seed):
    """Write the six study scenarios into a data directory."""
    bench = Workbench(data)
    for scenario in make_standard_scenarios(base_seed):
        name = bench.add_scenario(scenario)
        click.echo(name)


@main.command("metrics")
@click.argument("session_file", type=click.Path(exists=True))
def metrics_cmd(session_file):
    """Recompute and print the metrics of a persisted session."""
    from ..scenario import compute_metrics
    from .store import Session

    try:
        with open(session_file) as f:
            session = Session.from_json(json.load(f))
    except (ValueError, KeyError) as e:
        click.echo(f"invalid input: {e}", err=True)
        sys.exit(EXIT_INVALID)
    metrics = compute_metrics(session.scenario, session.live_domain, len(session.repair_log))
    _echo_json(metrics.to_json())


@main.group("session")
def session_group():
    """Drive an operator session against a data directory."""


_data_opt = click.option("--data", type=click.Path(), required=True, help="workbench data directory")


@session_group.command("create")
@_data_opt
@click.option("--scenario", "scenario_name", required=True)
def session_create(data, scenario_name):
    bench = Workbench(data)
    try:
        session = bench.create_session(scenario_name)
    except UnsolvableError as e:
        click.echo(f"unsolvable: {e}", err=True)
        sys.exit(EXIT_INFEASIBLE)
    click.echo(session.id)


@session_group.command("foil")
@_data_opt
@click.argument("session_id")
@click.argument("foil_file", type=click.Path(exists=True))
def session_foil(data, session_id, foil_file):
    bench = Workbench(data)
    with open(foil_file) as f:
        query = FoilQuery.from_json(json.load(f))
    try:
        outcome, explanation = bench.post_foil(session_id, query)
    except ValueError as e:
        click.echo(f"invalid input: {e}", err=True)
        sys.exit(EXIT_INVALID)
    click.echo(explanation.plain_text)
    if not outcome.feasible:
        sys.exit(EXIT_INFEASIBLE)


@session_group.command("patch")
@_data_opt
@click.argument("session_id")
@click.argument("site")
@click.argument("value", type=float)
def session_patch(data, session_id, site, value):
    bench = Workbench(data)
    try:
        session = bench.patch_domain(session_id, Site.parse(site), value)
    except ValueError as e:
        click.echo(f"invalid input: {e}", err=True)
        sys.exit(EXIT_INVALID)
    state = "unsolvable" if session.solution is None else f"makespan {session.solution.schedule.makespan:.2f}s"
    click.echo(f"{session.id}: {state}")


@session_group.command("finalize")
@_data_opt
@click.argument("session_id")
@click.argument("verdict", type=click.Choice(["declared-correct", "gave-up"]))
def session_finalize(data, session_id, verdict):
    bench = Workbench(data)
    metrics = bench.finalize(session_id, verdict)
    _echo_json(metrics.to_json())


@session_group.command("show")
@_data_opt
@click.argument("session_id")
def session_show(data, session_id):
    bench = Workbench(data)
    _echo_json(bench.get_session(session_id).to_json())


@main.command("serve")
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--data", type=click.Path(), default="./data", show_default=True)
def serve_cmd(port, data):
    """Run the HTTP gateway."""
    import uvicorn

    from .app import create_app

    uvicorn.run(create_app(data), host="127.0.0.1", port=port)


if __name__ == "__main__":
    main()
