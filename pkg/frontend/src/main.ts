/** Browser entry point: wires the pure view flows to the page. */

import { ServiceClient, type ScenarioInfo } from "./api.js";
import {
  CHROME,
  renderBanner,
  renderDebugPanel,
  renderScenarioOptions,
  renderScene,
  renderTranscript,
  type Locale,
} from "./render.js";
import {
  bannerForError,
  canSubmit,
  startSessionFlow,
  submitInputFlow,
  type Banner,
  type ClientSessionView,
} from "./view.js";

const client = new ServiceClient("");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const scenarioSelect = el<HTMLSelectElement>("scenario-select");
const localeSelect = el<HTMLSelectElement>("locale-select");
const debugToggle = el<HTMLInputElement>("debug-toggle");
const startButton = el<HTMLButtonElement>("start-button");
const sceneBox = el<HTMLElement>("scene");
const transcriptBox = el<HTMLElement>("transcript-box");
const bannerBox = el<HTMLElement>("banner");
const inputForm = el<HTMLFormElement>("input-form");
const playerInput = el<HTMLInputElement>("player-input");
const sendButton = el<HTMLButtonElement>("send-button");
const debugPanel = el<HTMLElement>("debug-panel");
const dialogueTitle = el<HTMLElement>("dialogue-title");
const debugTitle = el<HTMLElement>("debug-title");

let view: ClientSessionView | null = null;
let startError: Banner | null = null;
// What the retry button should run again after a connection failure.
let lastAction: () => Promise<void> = loadScenarios;

function locale(): Locale {
  return localeSelect.value === "es" ? "es" : "en";
}

function strings() {
  return CHROME[locale()];
}

function applyChrome(): void {
  const s = strings();
  dialogueTitle.textContent = s.dialogueTitle;
  debugTitle.textContent = s.debugTitle;
  startButton.textContent = s.start;
  sendButton.textContent = s.send;
  playerInput.placeholder = s.placeholder;
  el<HTMLElement>("scenario-label").textContent = s.scenario;
  el<HTMLElement>("locale-label").textContent = s.language;
  el<HTMLElement>("debug-label").textContent = s.debug;
}

function render(): void {
  applyChrome();
  const s = strings();
  if (startError) {
    bannerBox.innerHTML = renderBanner(startError, s);
  } else if (view) {
    bannerBox.innerHTML = view.pending
      ? `<div class="banner banner--pending" role="status">${s.pending}</div>`
      : renderBanner(view.banner, s);
  } else {
    bannerBox.innerHTML = "";
  }
  const retryButton = bannerBox.querySelector<HTMLButtonElement>("button.retry");
  if (retryButton) retryButton.addEventListener("click", () => void lastAction());

  if (view) {
    sceneBox.innerHTML = renderScene(view.scene);
    transcriptBox.innerHTML = renderTranscript(view);
    debugPanel.hidden = !view.debug;
    el<HTMLElement>("debug-entries").innerHTML = renderDebugPanel(view, s);
    playerInput.disabled = !canSubmit(view);
    sendButton.disabled = !canSubmit(view);
    if (!view.pending && view.draft && playerInput.value === "") {
      playerInput.value = view.draft;
    }
  } else {
    playerInput.disabled = true;
    sendButton.disabled = true;
    debugPanel.hidden = true;
  }
  transcriptBox.scrollTop = transcriptBox.scrollHeight;
}

async function loadScenarios(): Promise<void> {
  lastAction = loadScenarios;
  let scenarios: ScenarioInfo[];
  try {
    scenarios = await client.listScenarios();
  } catch (error) {
    startError = bannerForError(error);
    render();
    return;
  }
  startError = null;
  scenarioSelect.innerHTML = renderScenarioOptions(scenarios);
  render();
}

async function startSession(): Promise<void> {
  lastAction = startSession;
  try {
    view = await startSessionFlow(client, scenarioSelect.value, {
      debug: debugToggle.checked,
    });
    startError = null;
    playerInput.value = "";
  } catch (error) {
    startError = bannerForError(error);
  }
  render();
  if (view) playerInput.focus();
}

async function sendInput(): Promise<void> {
  if (!view) return;
  const text = playerInput.value;
  lastAction = sendInput;
  const current = view;
  view = await submitInputFlow(client, current, text, (pending) => {
    view = pending;
    playerInput.value = "";
    render();
  });
  render();
  if (canSubmit(view)) playerInput.focus();
}

startButton.addEventListener("click", () => void startSession());
inputForm.addEventListener("submit", (event) => {
  event.preventDefault();
  void sendInput();
});
localeSelect.addEventListener("change", render);

void loadScenarios();
render();
