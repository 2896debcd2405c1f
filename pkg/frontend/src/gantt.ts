import type { DomainDoc, SolutionDoc } from "./types";

export interface GanttBar {
  task: string;
  start: number;
  end: number;
}

export interface GanttRow {
  robot: string;
  bars: GanttBar[];
}

export interface GanttModel {
  makespan: number;
  rows: GanttRow[];
}

// Row per robot in domain order; idle robots keep an empty row.
export function buildGantt(domain: DomainDoc, solution: SolutionDoc): GanttModel {
  const rows: GanttRow[] = domain.robots.map((r) => {
    const tasks = solution.schedule.robot_tasks[r.name] ?? [];
    const bars = tasks
      .map((task) => ({
        task,
        start: solution.schedule.starts[task],
        end: solution.schedule.ends[task],
      }))
      .sort((a, b) => a.start - b.start);
    return { robot: r.name, bars };
  });
  return { makespan: solution.makespan, rows };
}

export function renderGantt(model: GanttModel): HTMLElement {
  const root = document.createElement("div");
  root.className = "gantt";

  const header = document.createElement("div");
  header.className = "gantt-makespan";
  header.textContent = `makespan ${model.makespan.toFixed(1)}s`;
  root.appendChild(header);

  const scale = model.makespan > 0 ? 100 / model.makespan : 0;
  for (const row of model.rows) {
    const rowEl = document.createElement("div");
    rowEl.className = "gantt-row";

    const label = document.createElement("span");
    label.className = "gantt-label";
    label.textContent = row.robot;
    rowEl.appendChild(label);

    const track = document.createElement("div");
    track.className = "gantt-track";
    for (const bar of row.bars) {
      const barEl = document.createElement("div");
      barEl.className = "gantt-bar";
      barEl.style.left = `${bar.start * scale}%`;
      barEl.style.width = `${Math.max(0.5, (bar.end - bar.start) * scale)}%`;
      barEl.title = `${bar.task}: ${bar.start.toFixed(1)}s–${bar.end.toFixed(1)}s`;
      barEl.textContent = bar.task;
      track.appendChild(barEl);
    }
    rowEl.appendChild(track);
    root.appendChild(rowEl);
  }
  return root;
}
