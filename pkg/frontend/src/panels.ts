import { buildGantt, renderGantt } from "./gantt";
import type { ViewState } from "./state";
import type { DomainDoc, ExplanationDoc, FoilHistoryEntry, MetricsDoc } from "./types";

export interface Handlers {
  submitFoil: () => void;
  commitDomainEdit: (site: string, value: number) => void;
  postJudgment: (verdict: string) => void;
  finalize: (verdict: string) => void;
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderMap(domain: DomainDoc): HTMLElement {
  const map = el("div", "map");
  const blocked = new Set(domain.map.blocked.map(([x, y]) => `${x},${y}`));
  const robotAt = new Map(domain.robots.map((r) => [`${r.start[0]},${r.start[1]}`, r.name]));
  const taskAt = new Map(domain.tasks.map((t) => [`${t.location[0]},${t.location[1]}`, t.name]));
  for (let y = 0; y < domain.map.height; y++) {
    const rowEl = el("div", "map-row");
    for (let x = 0; x < domain.map.width; x++) {
      const key = `${x},${y}`;
      const cell = el("span", "map-cell");
      if (blocked.has(key)) cell.classList.add("blocked");
      const occupant = robotAt.get(key) ?? taskAt.get(key);
      if (occupant) {
        cell.classList.add(robotAt.has(key) ? "robot" : "task");
        cell.title = occupant;
        cell.textContent = occupant[0];
      }
      rowEl.appendChild(cell);
    }
    map.appendChild(rowEl);
  }
  return map;
}

function allocationTable(
  state: ViewState,
  editable: boolean,
  assigned: (robot: string, task: string) => boolean,
  onToggle?: () => void,
): HTMLElement {
  const domain = state.session!.live_domain;
  const table = document.createElement("table");
  table.className = editable ? "allocation foil-editor" : "allocation";

  const head = document.createElement("tr");
  head.appendChild(el("th", "", ""));
  for (const task of domain.tasks) head.appendChild(el("th", "", task.name));
  table.appendChild(head);

  for (const robot of domain.robots) {
    const row = document.createElement("tr");
    row.appendChild(el("th", "", robot.name));
    for (const task of domain.tasks) {
      const cell = document.createElement("td");
      cell.dataset.robot = robot.name;
      cell.dataset.task = task.name;
      cell.textContent = assigned(robot.name, task.name) ? "●" : "";
      if (editable) {
        cell.classList.add("toggle");
        cell.addEventListener("click", () => {
          state.toggleFoilCell(robot.name, task.name);
          cell.textContent = state.foilAssigned(robot.name, task.name) ? "●" : "";
          onToggle?.();
        });
      }
      row.appendChild(cell);
    }
    table.appendChild(row);
  }
  return table;
}

export function renderSolutionPanel(state: ViewState): HTMLElement {
  const session = state.session!;
  const panel = el("section", "panel system-panel");
  panel.id = "system-panel";
  panel.appendChild(el("h2", "", "System Solution"));

  if (session.solution === null) {
    const banner = el("div", "banner infeasible-banner");
    banner.textContent = `No solution for the current domain: task ${session.unsolvable?.task} cannot be completed`;
    panel.appendChild(banner);
    panel.appendChild(renderMap(session.live_domain));
    return panel;
  }

  panel.appendChild(renderMap(session.live_domain));
  panel.appendChild(allocationTable(state, false, (r, t) => state.systemAssigned(r, t)));
  panel.appendChild(renderGantt(buildGantt(session.live_domain, session.solution)));
  return panel;
}

// Explanation text comes through verbatim; only sites the operator recently
// edited get a highlight wrapper, and only around whole lines.
export function renderExplanation(explanation: ExplanationDoc, state: ViewState): HTMLElement {
  const pane = el("div", "explanation");
  pane.id = "explanation-pane";
  const edited = [...state.recentlyEdited]
    .map((site) => /^phi\[(.+)\]$/.exec(site)?.[1] ?? /\[([^\]]+)\]/.exec(site)?.[1])
    .filter((name): name is string => name !== undefined);
  for (const line of explanation.plain_text.split("\n")) {
    const lineEl = el("div", "explanation-line", line);
    if (edited.some((name) => line.includes(name))) lineEl.classList.add("edited");
    pane.appendChild(lineEl);
  }
  pane.dataset.plainText = explanation.plain_text;
  return pane;
}

export function renderSandboxPanel(state: ViewState, handlers: Handlers): HTMLElement {
  const panel = el("section", "panel sandbox-panel");
  panel.id = "sandbox-panel";
  panel.appendChild(el("h2", "", "User Sandbox"));

  const submit = document.createElement("button");
  submit.id = "foil-submit";
  submit.textContent = "Ask why not";
  submit.disabled = !state.hasFoilChanges();
  submit.addEventListener("click", () => handlers.submitFoil());

  panel.appendChild(
    allocationTable(
      state,
      true,
      (r, t) => state.foilAssigned(r, t),
      () => {
        submit.disabled = !state.hasFoilChanges();
      },
    ),
  );
  panel.appendChild(submit);

  const last = state.session!.foil_history.at(-1);
  if (last) panel.appendChild(renderFoilResult(last, state));
  return panel;
}

export function renderFoilResult(entry: FoilHistoryEntry, state: ViewState): HTMLElement {
  const result = el("div", "foil-result");
  if (!entry.outcome.feasible) {
    const banner = el("div", "banner cause-banner", entry.explanation.cause_line ?? "");
    result.appendChild(banner);
  }
  result.appendChild(renderExplanation(entry.explanation, state));
  return result;
}

export function renderDomainEditor(state: ViewState, handlers: Handlers): HTMLElement {
  const session = state.session!;
  const domain = session.live_domain;
  const panel = el("section", "panel domain-editor");
  panel.id = "domain-editor";
  panel.appendChild(el("h2", "", "Domain Editor"));

  const addCell = (site: string, value: number, label: string) => {
    const row = el("div", "edit-row");
    row.appendChild(el("label", "", label));
    const input = document.createElement("input");
    input.type = "number";
    input.value = String(value);
    input.dataset.site = site;
    if (state.recentlyEdited.has(site)) input.classList.add("edited");
    // one commit per cell, on change; no bulk apply
    input.addEventListener("change", () => {
      handlers.commitDomainEdit(site, Number(input.value));
    });
    row.appendChild(input);
    panel.appendChild(row);
  };

  for (const robot of domain.robots) {
    domain.traits.forEach((trait, u) => {
      addCell(`Q[${robot.name}][${trait.name}]`, robot.traits[u], `${robot.name} ${trait.name}`);
    });
    addCell(`phi[${robot.name}]`, robot.speed, `${robot.name} speed`);
  }
  for (const task of domain.tasks) {
    domain.traits.forEach((trait, u) => {
      addCell(
        `Ystar[${task.name}][${trait.name}]`,
        task.requirements[u],
        `${task.name} ${trait.name}`,
      );
    });
  }
  return panel;
}

export function renderSessionControls(state: ViewState, handlers: Handlers): HTMLElement {
  const session = state.session!;
  const panel = el("section", "panel session-controls");
  panel.id = "session-controls";

  const status = el("span", "status", `session ${session.id}: ${session.status}`);
  panel.appendChild(status);

  if (session.initial_verdict === null && session.status === "open") {
    for (const verdict of ["model-correct", "model-wrong"]) {
      const btn = document.createElement("button");
      btn.className = "judgment";
      btn.textContent = verdict;
      btn.addEventListener("click", () => handlers.postJudgment(verdict));
      panel.appendChild(btn);
    }
  }

  if (session.status === "open") {
    for (const verdict of ["declared-correct", "gave-up"]) {
      const btn = document.createElement("button");
      btn.className = "finalize";
      btn.textContent = verdict;
      btn.addEventListener("click", () => handlers.finalize(verdict));
      panel.appendChild(btn);
    }
  }

  if (session.metrics) panel.appendChild(renderMetrics(session.metrics));
  return panel;
}

export function renderMetrics(metrics: MetricsDoc): HTMLElement {
  const box = el("div", "metrics");
  box.appendChild(el("div", "", `repair actions: ${metrics.repair_actions}`));
  box.appendChild(el("div", "", `corrected: ${metrics.corrected}`));
  box.appendChild(el("div", "", `extraneous corrections: ${metrics.extraneous_corrections}`));
  box.appendChild(
    el(
      "div",
      "",
      `remaining errors: Q ${metrics.rte_pct.toFixed(1)}% / Y* ${metrics.tre_pct.toFixed(1)}% / φ ${metrics.rse_pct.toFixed(1)}%`,
    ),
  );
  return box;
}
