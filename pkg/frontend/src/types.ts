// Gateway payload shapes. Field names mirror the session JSON documents
// served by the HTTP API; the UI never derives plan numbers on its own.

export interface RobotDoc {
  name: string;
  traits: number[];
  speed: number;
  start: [number, number];
}

export interface TaskDoc {
  name: string;
  location: [number, number];
  work_duration: number;
  requirements: number[];
}

export interface MapDoc {
  width: number;
  height: number;
  cell_size: number;
  blocked: [number, number][];
}

export interface TraitDoc {
  name: string;
  class: string;
}

export interface DomainDoc {
  traits: TraitDoc[];
  robots: RobotDoc[];
  tasks: TaskDoc[];
  precedence: [string, string][];
  map: MapDoc;
}

export interface ScheduleDoc {
  starts: Record<string, number>;
  ends: Record<string, number>;
  robot_tasks: Record<string, string[]>;
}

export interface SolutionDoc {
  allocation: Record<string, string[]>;
  schedule: ScheduleDoc;
  makespan: number;
  motions: Record<string, Record<string, [number, number][]>>;
}

export interface CauseDoc {
  kind: string;
  task?: string;
  robot?: string;
  edge?: [string, string];
}

export interface ExplanationDoc {
  capability_lines: string[];
  schedule_block: string | null;
  cause_line: string | null;
  plain_text: string;
}

export interface FoilHistoryEntry {
  query: FoilChangeDoc[];
  outcome: {
    feasible: boolean;
    allocation: Record<string, string[]>;
    cause: CauseDoc | null;
    solution: SolutionDoc | null;
  };
  explanation: ExplanationDoc;
}

export interface FoilChangeDoc {
  robot: string;
  task: string;
  op: "assign" | "unassign";
}

export interface SessionDoc {
  id: string;
  live_domain: DomainDoc;
  solution: SolutionDoc | null;
  unsolvable: { task: string } | null;
  foil_history: FoilHistoryEntry[];
  repair_log: { site: string; value: number }[];
  status: string;
  initial_verdict: string | null;
  final_verdict: string | null;
  metrics: MetricsDoc | null;
}

export interface MetricsDoc {
  repair_actions: number;
  corrected: number;
  extraneous_corrections: number;
  rte_pct: number;
  tre_pct: number;
  rse_pct: number;
}
