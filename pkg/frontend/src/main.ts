import { GatewayClient } from "./api";
import { App } from "./app";

document.addEventListener("DOMContentLoaded", async () => {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("Root element #app not found");
  }
  const params = new URLSearchParams(window.location.search);
  const base = params.get("gateway") ?? "http://127.0.0.1:8000";
  const app = new App(new GatewayClient(base), root);

  const sessionId = params.get("session");
  if (sessionId) {
    await app.load(sessionId);
    return;
  }
  const scenario = params.get("scenario");
  if (scenario) {
    await app.start(scenario);
    return;
  }
  const { scenarios } = await new GatewayClient(base).listScenarios();
  root.textContent = `Pick a scenario via ?scenario=…  Available: ${scenarios.join(", ")}`;
});
