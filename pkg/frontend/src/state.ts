import type { FoilChangeDoc, SessionDoc } from "./types";

// Client-side view state. The session snapshot is whatever the gateway last
// returned; foil toggles live beside it and never touch the system solution.
export class ViewState {
  session: SessionDoc | null = null;
  private foilToggles = new Set<string>();
  recentlyEdited = new Set<string>(); // site strings, for highlighting

  setSession(session: SessionDoc): void {
    this.session = session;
  }

  // task names may contain spaces, so key cells as a JSON pair
  private key(robot: string, task: string): string {
    return JSON.stringify([robot, task]);
  }

  systemAssigned(robot: string, task: string): boolean {
    const coalition = this.session?.solution?.allocation[task] ?? [];
    return coalition.includes(robot);
  }

  // The sandbox cell shows the system allocation with toggles applied.
  foilAssigned(robot: string, task: string): boolean {
    const toggled = this.foilToggles.has(this.key(robot, task));
    return toggled !== this.systemAssigned(robot, task);
  }

  toggleFoilCell(robot: string, task: string): void {
    const key = this.key(robot, task);
    if (this.foilToggles.has(key)) {
      this.foilToggles.delete(key);
    } else {
      this.foilToggles.add(key);
    }
  }

  clearFoil(): void {
    this.foilToggles.clear();
  }

  hasFoilChanges(): boolean {
    return this.foilToggles.size > 0;
  }

  foilChanges(): FoilChangeDoc[] {
    const changes: FoilChangeDoc[] = [];
    for (const key of this.foilToggles) {
      const [robot, task] = JSON.parse(key) as [string, string];
      changes.push({
        robot,
        task,
        op: this.systemAssigned(robot, task) ? "unassign" : "assign",
      });
    }
    return changes;
  }

  markEdited(site: string): void {
    this.recentlyEdited.add(site);
  }
}
