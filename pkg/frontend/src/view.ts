/** Client-side session state and the flows that advance it.
 *
 * The view is the only state the client keeps: reloading the page and
 * rebuilding from the transcript must reconstruct an identical view, so
 * every transition here is a pure function over plain data.
 */

import {
  ApiError,
  type ReportDoc,
  type ServiceClient,
  type SessionInfo,
  type TranscriptDoc,
  type TurnDoc,
  type TurnResult,
  type WorldDoc,
} from "./api.js";

export type BannerKind =
  | "none"
  | "connection"
  | "busy"
  | "completed"
  | "backend"
  | "error";

export interface Banner {
  kind: BannerKind;
  message: string;
}

export interface TranscriptEntry {
  index: number;
  playerInput: string;
  narration: string;
  objectiveMet: boolean;
}

export interface DebugEntry {
  index: number;
  reports: ReportDoc[];
  snapshot: WorldDoc | null;
}

export interface ClientSessionView {
  sessionId: string;
  scenario: string;
  title: string;
  locale: string;
  scene: string;
  turnLimit: number;
  turnCount: number;
  completed: boolean;
  debug: boolean;
  transcript: TranscriptEntry[];
  debugEntries: DebugEntry[];
  pending: boolean;
  banner: Banner;
  draft: string;
}

export const NO_BANNER: Banner = { kind: "none", message: "" };
const COMPLETED_BANNER: Banner = { kind: "completed", message: "" };

export function bannerForError(error: unknown): Banner {
  if (error instanceof ApiError) {
    if (error.status === 0) return { kind: "connection", message: error.message };
    if (error.status === 409) return { kind: "busy", message: error.message };
    if (error.status === 410) return { kind: "completed", message: error.message };
    if (error.status === 502) return { kind: "backend", message: error.message };
    return { kind: "error", message: error.message };
  }
  return { kind: "error", message: String(error) };
}

function freshView(info: SessionInfo, debug: boolean): ClientSessionView {
  return {
    sessionId: info.session_id,
    scenario: info.scenario,
    title: info.title,
    locale: info.locale,
    scene: info.scene,
    turnLimit: info.turn_limit,
    turnCount: info.turn_count,
    completed: info.completed,
    debug,
    transcript: [],
    debugEntries: [],
    pending: false,
    banner: NO_BANNER,
    draft: "",
  };
}

function transcriptEntry(turn: TurnDoc): TranscriptEntry {
  return {
    index: turn.index,
    playerInput: turn.player_input,
    narration: turn.narration,
    objectiveMet: turn.completed,
  };
}

function debugEntry(turn: TurnDoc): DebugEntry {
  return {
    index: turn.index,
    reports: turn.reports,
    snapshot: turn.world_after ?? null,
  };
}

export function canSubmit(view: ClientSessionView): boolean {
  return !view.pending && !view.completed;
}

/** Mark a turn as in flight; the draft keeps the text until it lands. */
export function beginTurn(view: ClientSessionView, text: string): ClientSessionView {
  return { ...view, pending: true, draft: text, banner: NO_BANNER };
}

export function applyTurn(
  view: ClientSessionView,
  result: TurnResult,
): ClientSessionView {
  return {
    ...view,
    scene: result.scene,
    turnCount: result.turn_count,
    completed: result.completed,
    transcript: [...view.transcript, transcriptEntry(result.turn)],
    debugEntries: view.debug
      ? [...view.debugEntries, debugEntry(result.turn)]
      : view.debugEntries,
    pending: false,
    draft: "",
    banner: result.completed ? COMPLETED_BANNER : NO_BANNER,
  };
}

/** The draft survives a failed turn so the player can retry it. */
export function failTurn(view: ClientSessionView, error: unknown): ClientSessionView {
  return { ...view, pending: false, banner: bannerForError(error) };
}

export function viewFromTranscript(
  info: SessionInfo,
  transcript: TranscriptDoc,
  debug: boolean,
): ClientSessionView {
  const view = freshView(info, debug);
  const turns = [...transcript.turns].sort((a, b) => a.index - b.index);
  return {
    ...view,
    scene: transcript.scene,
    turnCount: transcript.turn_count,
    completed: transcript.completed,
    transcript: turns.map(transcriptEntry),
    debugEntries: debug ? turns.map(debugEntry) : [],
    banner: transcript.completed ? COMPLETED_BANNER : NO_BANNER,
  };
}

export interface StartOptions {
  debug?: boolean;
  locale?: string;
  backend?: string;
  strictPuzzles?: boolean;
  turnLimit?: number;
}

export async function startSessionFlow(
  client: ServiceClient,
  scenario: string,
  options: StartOptions = {},
): Promise<ClientSessionView> {
  const info = await client.createSession({
    scenario,
    backend: options.backend,
    locale: options.locale,
    strict_puzzles: options.strictPuzzles,
    turn_limit: options.turnLimit,
  });
  return freshView(info, options.debug ?? false);
}

/** Submit one turn; at most one request is in flight per session. */
export async function submitInputFlow(
  client: ServiceClient,
  view: ClientSessionView,
  text: string,
  onPending?: (pending: ClientSessionView) => void,
): Promise<ClientSessionView> {
  const input = text.trim();
  if (!canSubmit(view) || input === "") return view;
  const pending = beginTurn(view, text);
  onPending?.(pending);
  try {
    const result = await client.submitTurn(view.sessionId, input);
    return applyTurn(pending, result);
  } catch (error) {
    return failTurn(pending, error);
  }
}

export async function resumeSessionFlow(
  client: ServiceClient,
  sessionId: string,
  debug: boolean,
): Promise<ClientSessionView> {
  const info = await client.getSession(sessionId);
  const transcript = await client.getTranscript(sessionId);
  return viewFromTranscript(info, transcript, debug);
}
