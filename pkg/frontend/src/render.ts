/** HTML renderers. Everything here returns strings so it can run anywhere. */

import type { ReportDoc, ScenarioInfo, TransformationDoc, WorldDoc } from "./api.js";
import { diffIsEmpty, diffWorlds, type WorldDiff } from "./diff.js";
import type { Banner, ClientSessionView, DebugEntry } from "./view.js";

export interface ChromeStrings {
  scenario: string;
  start: string;
  language: string;
  debug: string;
  placeholder: string;
  send: string;
  dialogueTitle: string;
  debugTitle: string;
  applied: string;
  rejected: string;
  pending: string;
  objectiveComplete: string;
  turnBusy: string;
  backendDown: string;
  connectionLost: string;
  retry: string;
  noTurns: string;
  turn: string;
}

export type Locale = "en" | "es";

/** Display chrome only; narration and scene text always come from the server. */
export const CHROME: Record<Locale, ChromeStrings> = {
  en: {
    scenario: "Scenario",
    start: "Start",
    language: "Language",
    debug: "Debug panel",
    placeholder: "What do you do?",
    send: "Send",
    dialogueTitle: "Dialogue",
    debugTitle: "World state",
    applied: "applied",
    rejected: "rejected",
    pending: "The storyteller is thinking...",
    objectiveComplete: "Objective complete.",
    turnBusy: "A turn is already in flight.",
    backendDown: "The storyteller backend failed. Your input was kept.",
    connectionLost: "Cannot reach the service.",
    retry: "Retry",
    noTurns: "No turns yet.",
    turn: "Turn",
  },
  es: {
    scenario: "Escenario",
    start: "Empezar",
    language: "Idioma",
    debug: "Panel de estado",
    placeholder: "¿Qué haces?",
    send: "Enviar",
    dialogueTitle: "Diálogo",
    debugTitle: "Estado del mundo",
    applied: "aplicada",
    rejected: "rechazada",
    pending: "El narrador está pensando...",
    objectiveComplete: "Objetivo cumplido.",
    turnBusy: "Ya hay un turno en curso.",
    backendDown: "El narrador falló. Tu texto se ha conservado.",
    connectionLost: "No se puede contactar con el servicio.",
    retry: "Reintentar",
    noTurns: "Sin turnos todavía.",
    turn: "Turno",
  },
};

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

export function describeTransformation(t: TransformationDoc): string {
  if (t.type === "move_item") return `move ${t.item} to ${t.destination}`;
  if (t.type === "unblock_location") return `unblock ${t.target}`;
  return `go to ${t.target}`;
}

export function renderScene(scene: string): string {
  return `<pre class="scene">${escapeHtml(scene)}</pre>`;
}

export function renderTranscript(view: ClientSessionView): string {
  const entries = view.transcript
    .map((entry) => {
      const marker = entry.objectiveMet ? " turn--objective" : "";
      return (
        `<li class="turn${marker}" data-turn="${entry.index}">` +
        `<p class="player-input">${escapeHtml(entry.playerInput)}</p>` +
        `<p class="narration">${escapeHtml(entry.narration)}</p>` +
        `</li>`
      );
    })
    .join("");
  return `<ol class="transcript">${entries}</ol>`;
}

export function renderReports(reports: ReportDoc[], strings: ChromeStrings): string {
  const items = reports
    .map((report) => {
      const applied = report.outcome === "applied";
      const badgeClass = applied ? "badge--applied" : "badge--rejected";
      const label = applied ? strings.applied : strings.rejected;
      const reason = report.reason
        ? ` <span class="reason">${escapeHtml(report.reason)}</span>`
        : "";
      return (
        `<li class="report">` +
        `<span class="badge ${badgeClass}">${escapeHtml(label)}</span> ` +
        `<code>${escapeHtml(describeTransformation(report.transformation))}</code>` +
        reason +
        `</li>`
      );
    })
    .join("");
  return `<ul class="reports">${items}</ul>`;
}

export function renderDiff(diff: WorldDiff): string {
  if (diffIsEmpty(diff)) return "";
  const lines: string[] = [];
  for (const move of diff.itemMoves) {
    lines.push(
      `<li class="diff-move">${escapeHtml(move.item)}: ` +
        `${escapeHtml(move.from)} to ${escapeHtml(move.to)}</li>`,
    );
  }
  for (const unblock of diff.unblocked) {
    lines.push(
      `<li class="diff-unblock">unblocked: ${escapeHtml(unblock.target)} ` +
        `(from ${escapeHtml(unblock.location)})</li>`,
    );
  }
  if (diff.playerMove) {
    lines.push(
      `<li class="diff-player">player: ${escapeHtml(diff.playerMove.from)} ` +
        `to ${escapeHtml(diff.playerMove.to)}</li>`,
    );
  }
  return `<ul class="diff">${lines.join("")}</ul>`;
}

function renderDebugEntry(
  entry: DebugEntry,
  previous: WorldDoc | null,
  strings: ChromeStrings,
): string {
  const diffHtml =
    entry.snapshot && previous
      ? renderDiff(diffWorlds(previous, entry.snapshot))
      : "";
  return (
    `<section class="debug-turn" data-turn="${entry.index}">` +
    `<h3>${escapeHtml(strings.turn)} ${entry.index}</h3>` +
    renderReports(entry.reports, strings) +
    diffHtml +
    `</section>`
  );
}

export function renderDebugPanel(
  view: ClientSessionView,
  strings: ChromeStrings,
): string {
  if (!view.debug) return "";
  if (view.debugEntries.length === 0) {
    return `<p class="debug-empty">${escapeHtml(strings.noTurns)}</p>`;
  }
  const sections: string[] = [];
  let previous: WorldDoc | null = null;
  for (const entry of view.debugEntries) {
    sections.push(renderDebugEntry(entry, previous, strings));
    if (entry.snapshot) previous = entry.snapshot;
  }
  return sections.join("");
}

export function renderBanner(banner: Banner, strings: ChromeStrings): string {
  if (banner.kind === "none") return "";
  const labels: Record<Exclude<Banner["kind"], "none">, string> = {
    connection: strings.connectionLost,
    busy: strings.turnBusy,
    completed: strings.objectiveComplete,
    backend: strings.backendDown,
    error: banner.message,
  };
  const label = labels[banner.kind];
  const detail =
    banner.message && banner.message !== label
      ? ` <small>${escapeHtml(banner.message)}</small>`
      : "";
  const retry =
    banner.kind === "connection"
      ? ` <button type="button" class="retry">${escapeHtml(strings.retry)}</button>`
      : "";
  return (
    `<div class="banner banner--${banner.kind}" role="status">` +
    `${escapeHtml(label)}${detail}${retry}</div>`
  );
}

export function renderScenarioOptions(scenarios: ScenarioInfo[]): string {
  return scenarios
    .map(
      (s) =>
        `<option value="${escapeHtml(s.name)}">` +
        `${escapeHtml(s.title)} (${escapeHtml(s.name)})</option>`,
    )
    .join("");
}
