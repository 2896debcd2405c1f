import type { FetchLike } from "../src/api";
import type {
  DomainDoc,
  ExplanationDoc,
  FoilChangeDoc,
  FoilHistoryEntry,
  SessionDoc,
  SolutionDoc,
} from "../src/types";

// Two-robot, three-task fixture mirroring the gateway's speed-error scenario.
export function makeDomain(): DomainDoc {
  return {
    traits: [
      { name: "carrying_capacity", class: "cumulative" },
      { name: "stretcher", class: "binary" },
      { name: "robotic_arm", class: "binary" },
      { name: "forklift", class: "binary" },
    ],
    robots: [
      { name: "ambulance", traits: [2500, 1, 1, 0], speed: 40, start: [0, 0] },
      { name: "dumptruck", traits: [5000, 0, 0, 1], speed: 4, start: [29, 29] },
    ],
    tasks: [
      { name: "D1", location: [6, 6], work_duration: 60, requirements: [600, 0, 0, 0] },
      { name: "D3", location: [24, 24], work_duration: 60, requirements: [500, 0, 0, 1] },
      { name: "H1", location: [12, 2], work_duration: 60, requirements: [100, 1, 0, 0] },
    ],
    precedence: [],
    map: { width: 30, height: 30, cell_size: 40, blocked: [] },
  };
}

export function makeSolution(makespan = 160): SolutionDoc {
  return {
    allocation: { D1: ["ambulance"], D3: ["dumptruck"], H1: ["ambulance"] },
    schedule: {
      starts: { D1: 0, D3: 0, H1: makespan - 74 },
      ends: { D1: 72, D3: makespan - 10, H1: makespan },
      robot_tasks: { ambulance: ["D1", "H1"], dumptruck: ["D3"] },
    },
    makespan,
    motions: {},
  };
}

export const PLAIN_TEXT = [
  "Task and Robot Capabilities Comparison:",
  "  • ambulance([2500, 1, 0]) and dumptruck([5000, 0, 1]) can work D1([600, 0, 0])",
  "User's solution takes 141% more time: 2.67 minutes→15.67 minutes",
  "  • dumptruck takes 141% more time",
  "    • D1 takes 151% more time: ambulance(40.0m/s)→dumptruck(4.0m/s)",
].join("\n");

export function makeExplanation(): ExplanationDoc {
  return {
    capability_lines: [
      "ambulance([2500, 1, 0]) and dumptruck([5000, 0, 1]) can work D1([600, 0, 0])",
    ],
    schedule_block: PLAIN_TEXT.split("\n").slice(2).join("\n"),
    cause_line: null,
    plain_text: PLAIN_TEXT,
  };
}

export function makeSession(): SessionDoc {
  return {
    id: "abc123",
    live_domain: makeDomain(),
    solution: makeSolution(),
    unsolvable: null,
    foil_history: [],
    repair_log: [],
    status: "open",
    initial_verdict: null,
    final_verdict: null,
    metrics: null,
  };
}

export interface RequestLogEntry {
  method: string;
  path: string;
  body: unknown;
}

// In-memory stand-in for the gateway: serves the fixture session, appends
// foil history on POST, bumps the makespan on PATCH, and logs every request.
export class FakeGateway {
  session = makeSession();
  log: RequestLogEntry[] = [];
  patchedMakespan = 230;

  fetch: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    this.log.push({ method, path, body });
    return this.route(method, path, body);
  };

  requests(method: string, pathPrefix: string): RequestLogEntry[] {
    return this.log.filter((r) => r.method === method && r.path.startsWith(pathPrefix));
  }

  private respond(status: number, payload: unknown): Response {
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  }

  private route(method: string, path: string, body: unknown): Response {
    if (method === "GET" && path === "/scenarios") {
      return this.respond(200, { scenarios: ["speed-error-walkthrough"] });
    }
    if (method === "POST" && path === "/sessions") {
      return this.respond(201, this.session);
    }
    if (method === "GET" && path === `/sessions/${this.session.id}`) {
      return this.respond(200, this.session);
    }
    if (method === "POST" && path === `/sessions/${this.session.id}/foils`) {
      const entry: FoilHistoryEntry = {
        query: body as FoilChangeDoc[],
        outcome: {
          feasible: true,
          allocation: { D1: ["dumptruck"], D3: ["dumptruck"], H1: ["ambulance"] },
          cause: null,
          solution: makeSolution(940),
        },
        explanation: makeExplanation(),
      };
      this.session.foil_history.push(entry);
      return this.respond(200, entry);
    }
    if (method === "POST" && path === `/sessions/${this.session.id}/judgment`) {
      this.session.initial_verdict = (body as { verdict: string }).verdict;
      return this.respond(200, this.session);
    }
    if (method === "PATCH" && path === `/sessions/${this.session.id}/domain`) {
      const { site, value } = body as { site: string; value: number };
      if (!/^(Q|Ystar|phi)\[/.test(site)) {
        return this.respond(422, { error: `unknown site: ${site}` });
      }
      this.session.repair_log.push({ site, value });
      const speedMatch = /^phi\[(.+)\]$/.exec(site);
      if (speedMatch) {
        const robot = this.session.live_domain.robots.find((r) => r.name === speedMatch[1]);
        if (robot) robot.speed = value;
      }
      this.session.solution = makeSolution(this.patchedMakespan);
      return this.respond(200, this.session);
    }
    if (method === "POST" && path === `/sessions/${this.session.id}/finalize`) {
      this.session.status = (body as { verdict: string }).verdict;
      this.session.metrics = {
        repair_actions: this.session.repair_log.length,
        corrected: 1,
        extraneous_corrections: 0,
        rte_pct: 0,
        tre_pct: 0,
        rse_pct: 0,
      };
      return this.respond(200, this.session.metrics);
    }
    return this.respond(404, { error: `no route: ${method} ${path}` });
  }
}
