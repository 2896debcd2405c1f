"""Scripted repair sessions over the standard scenarios.

For each scenario a simulated operator fixes every injected error
(the perfect-repair baseline), the session is finalized, and the
resulting metrics are printed as CSV.
"""
import argparse
import tempfile

from crewlens.gateway.store import Workbench
from crewlens.scenario import SessionMetrics, make_standard_scenarios, metrics_csv


def run_session(bench: Workbench, name: str) -> SessionMetrics:
    session = bench.create_session(name)
    for site, truth_value, _ in session.scenario.injected.entries:
        bench.patch_domain(session.id, site, truth_value)
    return bench.finalize(session.id, "declared-correct")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default=None, help="workbench data directory (default: temp)")
    parser.add_argument("--base-seed", type=int, default=7)
    args = parser.parse_args()

    data = args.data or tempfile.mkdtemp(prefix="crewlens-study-")
    bench = Workbench(data)
    rows = []
    for scenario in make_standard_scenarios(args.base_seed):
        name = bench.add_scenario(scenario)
        rows.append((name, run_session(bench, name)))
    print(metrics_csv(rows), end="")
    print(f"# sessions persisted under {bench.session_dir}")


if __name__ == "__main__":
    main()
