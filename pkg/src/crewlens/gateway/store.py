"""Session hosting and persistence: one JSON document per session.

A session binds a scenario to a live (repairable) domain, the current solved
solution, the foil history, and the repair log. Mutations re-persist the
whole document; serialization is canonical so a reload reproduces the file
byte for byte.
"""
from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from ..compare import ComparatorConfig, FactorSet, compare_allocations, compare_schedules, filter_critical
from ..domain import ProblemDomain, Site, domain_from_json, domain_to_json
from ..explain import Explanation, ExplainerConfig, explain
from ..foil import FoilOutcome, FoilQuery, build_foil
from ..planner import (
    Cause,
    Solution,
    UnsolvableError,
    schedule_allocation,
    solution_from_json,
    solution_to_json,
    solve,
)
from ..scenario import Scenario, SessionMetrics, apply_repair, compute_metrics

OPEN = "open"
DECLARED_CORRECT = "declared-correct"
GAVE_UP = "gave-up"


class NotFoundError(Exception):
    pass


class ConflictError(Exception):
    pass


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


@dataclass
class Session:
    id: str
    scenario: Scenario
    live_domain: ProblemDomain
    solution: Solution | None
    unsolvable: dict | None  # {"task": name} when the live domain cannot be solved
    foil_history: list[dict] = field(default_factory=list)
    repair_log: list[dict] = field(default_factory=list)
    status: str = OPEN
    initial_verdict: str | None = None
    final_verdict: str | None = None
    metrics: dict | None = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "scenario": self.scenario.to_json(),
            "live_domain": domain_to_json(self.live_domain),
            "solution": solution_to_json(self.live_domain, self.solution) if self.solution else None,
            "unsolvable": self.unsolvable,
            "foil_history": self.foil_history,
            "repair_log": self.repair_log,
            "status": self.status,
            "initial_verdict": self.initial_verdict,
            "final_verdict": self.final_verdict,
            "metrics": self.metrics,
        }

    @staticmethod
    def from_json(doc: dict) -> "Session":
        live = domain_from_json(doc["live_domain"])
        return Session(
            id=doc["id"],
            scenario=Scenario.from_json(doc["scenario"]),
            live_domain=live,
            solution=solution_from_json(live, doc["solution"]) if doc.get("solution") else None,
            unsolvable=doc.get("unsolvable"),
            foil_history=doc.get("foil_history", []),
            repair_log=doc.get("repair_log", []),
            status=doc.get("status", OPEN),
            initial_verdict=doc.get("initial_verdict"),
            final_verdict=doc.get("final_verdict"),
            metrics=doc.get("metrics"),
        )


class Workbench:
    """Scenario registry plus session lifecycle over a data directory."""

    def __init__(
        self,
        data_dir: str | Path,
        comparator: ComparatorConfig = ComparatorConfig(),
        explainer: ExplainerConfig = ExplainerConfig(),
    ):
        self.data_dir = Path(data_dir)
        self.scenario_dir = self.data_dir / "scenarios"
        self.session_dir = self.data_dir / "sessions"
        self.scenario_dir.mkdir(parents=True, exist_ok=True)
        self.session_dir.mkdir(parents=True, exist_ok=True)
        self.comparator = comparator
        self.explainer = explainer

    # -- scenarios ----------------------------------------------------------

    def list_scenarios(self) -> list[str]:
        return sorted(p.stem for p in self.scenario_dir.glob("*.json"))

    def get_scenario(self, name: str) -> Scenario:
        path = self.scenario_dir / f"{name}.json"
        if not path.exists():
            raise NotFoundError(f"unknown scenario: {name!r}")
        with open(path) as f:
            return Scenario.from_json(json.load(f))

    def add_scenario(self, scenario: Scenario, name: str | None = None) -> str:
        name = name or scenario.label
        path = self.scenario_dir / f"{name}.json"
        path.write_text(canonical_json(scenario.to_json()))
        return name

    # -- sessions -----------------------------------------------------------

    def _session_path(self, session_id: str) -> Path:
        return self.session_dir / f"{session_id}.json"

    def save(self, session: Session) -> None:
        self._session_path(session.id).write_text(canonical_json(session.to_json()))

    def get_session(self, session_id: str) -> Session:
        path = self._session_path(session_id)
        if not path.exists():
            raise NotFoundError(f"unknown session: {session_id!r}")
        with open(path) as f:
            return Session.from_json(json.load(f))

    def create_session(self, scenario_name: str) -> Session:
        scenario = self.get_scenario(scenario_name)
        solution = solve(scenario.presented)  # UnsolvableError propagates to the caller
        session = Session(
            id=uuid.uuid4().hex[:12],
            scenario=scenario,
            live_domain=scenario.presented,
            solution=solution,
            unsolvable=None,
        )
        self.save(session)
        return session

    def _require_open(self, session: Session) -> None:
        if session.status != OPEN:
            raise ConflictError(f"session {session.id} is {session.status}")

    def post_foil(self, session_id: str, query: FoilQuery) -> tuple[FoilOutcome, Explanation]:
        session = self.get_session(session_id)
        self._require_open(session)
        if session.solution is None:
            raise ConflictError("session has no current solution to contrast against")
        outcome = build_foil(session.live_domain, session.solution, query)
        fc: FactorSet | None = None
        if outcome.feasible:
            factors = FactorSet(
                tuple(compare_allocations(session.solution.allocation, outcome.allocation, session.live_domain)),
                tuple(
                    compare_schedules(
                        session.solution.schedule,
                        outcome.solution.schedule,
                        session.live_domain,
                        self.comparator,
                    )
                ),
            )
            fc = filter_critical(factors, self.comparator.z)
        explanation = explain(session.live_domain, session.solution, outcome, fc, self.explainer)
        session.foil_history.append(
            {
                "query": query.to_json(),
                "outcome": {
                    "feasible": outcome.feasible,
                    "allocation": {
                        name: list(outcome.allocation.coalition(m, session.live_domain.robot_ids))
                        for m, name in enumerate(session.live_domain.task_names)
                    },
                    "cause": outcome.cause.to_json() if outcome.cause else None,
                    "solution": (
                        solution_to_json(session.live_domain, outcome.solution)
                        if outcome.solution
                        else None
                    ),
                    "factors": fc.to_json() if fc else None,
                },
                "explanation": explanation.to_json(),
            }
        )
        self.save(session)
        return outcome, explanation

    def set_initial_verdict(self, session_id: str, verdict: str) -> Session:
        session = self.get_session(session_id)
        self._require_open(session)
        session.initial_verdict = verdict
        self.save(session)
        return session

    def patch_domain(self, session_id: str, site: Site, value: float) -> Session:
        session = self.get_session(session_id)
        self._require_open(session)
        session.live_domain = apply_repair(session.live_domain, (site, value))
        session.repair_log.append({"site": str(site), "value": value})
        try:
            session.solution = solve(session.live_domain)
            session.unsolvable = None
        except UnsolvableError as e:
            session.solution = None
            session.unsolvable = {"task": e.task}
        self.save(session)
        return session

    def finalize(self, session_id: str, verdict: str) -> SessionMetrics:
        if verdict not in (DECLARED_CORRECT, GAVE_UP):
            raise ValueError(f"unknown verdict: {verdict!r}")
        session = self.get_session(session_id)
        self._require_open(session)
        metrics = compute_metrics(session.scenario, session.live_domain, len(session.repair_log))
        session.status = verdict
        session.final_verdict = verdict
        session.metrics = metrics.to_json()
        self.save(session)
        return metrics
