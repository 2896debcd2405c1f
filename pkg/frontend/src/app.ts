import { GatewayClient, GatewayError } from "./api";
import {
  Handlers,
  renderDomainEditor,
  renderSandboxPanel,
  renderSessionControls,
  renderSolutionPanel,
} from "./panels";
import { ViewState } from "./state";

// Top-level controller. Every mutation round-trips through the gateway and
// the whole view re-renders from the response; nothing is optimistic.
export class App {
  readonly state = new ViewState();

  constructor(private client: GatewayClient, private root: HTMLElement) {}

  async start(scenario: string): Promise<void> {
    this.state.setSession(await this.client.createSession(scenario));
    this.render();
  }

  async load(sessionId: string): Promise<void> {
    this.state.setSession(await this.client.getSession(sessionId));
    this.render();
  }

  private handlers: Handlers = {
    submitFoil: () => void this.submitFoil(),
    commitDomainEdit: (site, value) => void this.commitDomainEdit(site, value),
    postJudgment: (verdict) => void this.postJudgment(verdict),
    finalize: (verdict) => void this.finalize(verdict),
  };

  async submitFoil(): Promise<void> {
    const session = this.state.session!;
    try {
      await this.client.postFoil(session.id, this.state.foilChanges());
    } catch (err) {
      this.showError(err);
      return;
    }
    this.state.clearFoil();
    this.state.setSession(await this.client.getSession(session.id));
    this.render();
  }

  async commitDomainEdit(site: string, value: number): Promise<void> {
    const session = this.state.session!;
    try {
      this.state.setSession(await this.client.patchDomain(session.id, site, value));
    } catch (err) {
      this.showError(err);
      return;
    }
    this.state.markEdited(site);
    this.render();
  }

  async postJudgment(verdict: string): Promise<void> {
    const session = this.state.session!;
    try {
      this.state.setSession(await this.client.postJudgment(session.id, verdict));
    } catch (err) {
      this.showError(err);
      return;
    }
    this.render();
  }

  async finalize(verdict: string): Promise<void> {
    const session = this.state.session!;
    try {
      await this.client.finalize(session.id, verdict);
    } catch (err) {
      this.showError(err);
      return;
    }
    this.state.setSession(await this.client.getSession(session.id));
    this.render();
  }

  render(): void {
    this.root.innerHTML = "";
    this.root.appendChild(renderSessionControls(this.state, this.handlers));
    this.root.appendChild(renderSolutionPanel(this.state));
    this.root.appendChild(renderSandboxPanel(this.state, this.handlers));
    this.root.appendChild(renderDomainEditor(this.state, this.handlers));
  }

  private showError(err: unknown): void {
    const banner = document.createElement("div");
    banner.className = "banner error-banner";
    banner.textContent =
      err instanceof GatewayError ? `gateway: ${err.message}` : String(err);
    this.root.prepend(banner);
  }
}
