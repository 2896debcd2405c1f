"""Populate a workbench data directory with the study scenarios.

Writes the six standard error-tuple scenarios plus the two-robot
speed-error walkthrough, then lists what landed on disk.
"""
import argparse

from crewlens.gateway.store import Workbench
from crewlens.scenario import build_headline_scenario, make_standard_scenarios


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default="./data", help="workbench data directory")
    parser.add_argument("--base-seed", type=int, default=7)
    args = parser.parse_args()

    bench = Workbench(args.data)
    for scenario in make_standard_scenarios(args.base_seed):
        bench.add_scenario(scenario)
    bench.add_scenario(build_headline_scenario(), "speed-error-walkthrough")
    for name in bench.list_scenarios():
        scenario = bench.get_scenario(name)
        print(f"{name}: {len(scenario.injected.entries)} injected errors")


if __name__ == "__main__":
    main()
