/** Typed client for the storyloom HTTP service. */

export interface ScenarioInfo {
  name: string;
  title: string;
  starting_scene: string;
}

export interface BackendInfo {
  name: string;
  kind: string;
}

export interface TransformationDoc {
  type: "move_item" | "unblock_location" | "move_player";
  item?: string;
  destination?: string;
  target?: string;
}

export interface ReportDoc {
  transformation: TransformationDoc;
  outcome: "applied" | "rejected";
  reason: string | null;
}

export interface BlockedDoc {
  target: string;
  obstacle: string;
}

export interface LocationDoc {
  name: string;
  descriptions: string[];
  items: string[];
  connecting: string[];
  blocked: BlockedDoc[];
}

export interface CharacterDoc {
  name: string;
  descriptions: string[];
  location: string;
  inventory: string[];
}

export interface ItemDoc {
  name: string;
  descriptions: string[];
  gettable: boolean;
}

export interface PuzzleDoc {
  name: string;
  descriptions: string[];
  problem: string;
  answer: string;
}

export interface ObjectiveDoc {
  kind: string;
  subject: string;
  location?: string;
}

export interface WorldDoc {
  player: string;
  locations: LocationDoc[];
  characters: CharacterDoc[];
  items: ItemDoc[];
  puzzles: PuzzleDoc[];
  objective?: ObjectiveDoc;
  detached_items?: string[];
}

export interface TurnDoc {
  index: number;
  player_input: string;
  narration: string;
  parse_error: string | null;
  reports: ReportDoc[];
  completed: boolean;
  at: string;
  raw_reply?: string;
  world_after?: WorldDoc;
  scene_after?: string;
}

export interface SessionInfo {
  session_id: string;
  scenario: string;
  title: string;
  locale: string;
  strict_puzzles: boolean;
  turn_limit: number;
  turn_count: number;
  completed: boolean;
  scene: string;
}

export interface TurnResult {
  turn: TurnDoc;
  scene: string;
  completed: boolean;
  turn_count: number;
}

export interface TranscriptDoc {
  session_id: string;
  scenario: string;
  locale: string;
  turn_count: number;
  completed: boolean;
  scene: string;
  turns: TurnDoc[];
}

export interface CreateSessionRequest {
  scenario: string;
  backend?: string;
  locale?: string;
  strict_puzzles?: boolean;
  turn_limit?: number;
}

/** An HTTP failure; status 0 means the service was unreachable. */
export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
    this.status = status;
  }
}

async function parseDetail(response: Response): Promise<string> {
  const fallback = `${response.status} ${response.statusText}`;
  try {
    const body = await response.json();
    if (body && body.detail !== undefined) {
      return typeof body.detail === "string"
        ? body.detail
        : JSON.stringify(body.detail);
    }
  } catch {
    // ignore bodies that are not JSON
  }
  return fallback;
}

export class ServiceClient {
  constructor(readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}${path}`, init);
    } catch {
      throw new ApiError(0, "cannot reach the service");
    }
    if (!response.ok) {
      throw new ApiError(response.status, await parseDetail(response));
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  health(): Promise<{ status: string }> {
    return this.request("/healthz");
  }

  listScenarios(): Promise<ScenarioInfo[]> {
    return this.request("/scenarios");
  }

  listBackends(): Promise<BackendInfo[]> {
    return this.request("/backends");
  }

  createSession(req: CreateSessionRequest): Promise<SessionInfo> {
    return this.post("/sessions", req);
  }

  getSession(sessionId: string): Promise<SessionInfo> {
    return this.request(`/sessions/${sessionId}`);
  }

  submitTurn(sessionId: string, input: string): Promise<TurnResult> {
    return this.post(`/sessions/${sessionId}/turns`, { input });
  }

  getTranscript(
    sessionId: string,
    options: { after?: number; limit?: number } = {},
  ): Promise<TranscriptDoc> {
    const params = new URLSearchParams();
    if (options.after !== undefined) params.set("after", String(options.after));
    if (options.limit !== undefined) params.set("limit", String(options.limit));
    const query = params.toString();
    const suffix = query ? `?${query}` : "";
    return this.request(`/sessions/${sessionId}/transcript${suffix}`);
  }
}
