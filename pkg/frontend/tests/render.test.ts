import { describe, expect, it } from "vitest";

import type { ReportDoc, WorldDoc } from "../src/api.js";
import {
  CHROME,
  describeTransformation,
  escapeHtml,
  renderBanner,
  renderDebugPanel,
  renderReports,
  renderScenarioOptions,
  renderScene,
  renderTranscript,
} from "../src/render.js";
import type { ClientSessionView } from "../src/view.js";

const EN = CHROME.en;

function view(overrides: Partial<ClientSessionView> = {}): ClientSessionView {
  return {
    sessionId: "abc123",
    scenario: "scenario-a",
    title: "Hojita",
    locale: "en",
    scene: "scene text",
    turnLimit: 50,
    turnCount: 0,
    completed: false,
    debug: true,
    transcript: [],
    debugEntries: [],
    pending: false,
    banner: { kind: "none", message: "" },
    draft: "",
    ...overrides,
  };
}

function snapshot(playerAt: string, holding: string[]): WorldDoc {
  return {
    player: "Emma",
    locations: [
      {
        name: "Studio",
        descriptions: [],
        items: holding.includes("Key") ? [] : ["Key"],
        connecting: [],
        blocked: [],
      },
      { name: "Hall", descriptions: [], items: [], connecting: [], blocked: [] },
    ],
    characters: [
      { name: "Emma", descriptions: [], location: playerAt, inventory: holding },
    ],
    items: [],
    puzzles: [],
  };
}

describe("escapeHtml", () => {
  it("neutralizes markup characters", () => {
    expect(escapeHtml(`<b>"x" & 'y'</b>`)).toBe(
      "&lt;b&gt;&quot;x&quot; &amp; &#39;y&#39;&lt;/b&gt;",
    );
  });
});

describe("describeTransformation", () => {
  it("describes each transformation kind", () => {
    expect(
      describeTransformation({
        type: "move_item",
        item: "Key",
        destination: "Inventory",
      }),
    ).toBe("move Key to Inventory");
    expect(describeTransformation({ type: "unblock_location", target: "Garden" })).toBe(
      "unblock Garden",
    );
    expect(describeTransformation({ type: "move_player", target: "Kitchen" })).toBe(
      "go to Kitchen",
    );
  });
});

describe("renderTranscript", () => {
  it("shows player input and narration per turn, escaped", () => {
    const html = renderTranscript(
      view({
        transcript: [
          {
            index: 1,
            playerInput: "<script>alert(1)</script>",
            narration: "You look around.",
            objectiveMet: false,
          },
        ],
      }),
    );
    expect(html).toContain('data-turn="1"');
    expect(html).toContain("&lt;script&gt;");
    expect(html).not.toContain("<script>");
    expect(html).toContain("You look around.");
  });

  it("marks the objective turn", () => {
    const html = renderTranscript(
      view({
        transcript: [
          { index: 1, playerInput: "a", narration: "b", objectiveMet: true },
        ],
      }),
    );
    expect(html).toContain("turn--objective");
  });
});

describe("renderReports", () => {
  const applied: ReportDoc = {
    transformation: { type: "move_item", item: "Key", destination: "Inventory" },
    outcome: "applied",
    reason: null,
  };
  const rejected: ReportDoc = {
    transformation: { type: "move_item", item: "Turtle", destination: "Kitchen" },
    outcome: "rejected",
    reason: "destination-unreachable",
  };

  it("badges applied and rejected outcomes differently", () => {
    const html = renderReports([applied, rejected], EN);
    expect(html).toContain("badge--applied");
    expect(html).toContain("badge--rejected");
    expect(html).toContain("move Key to Inventory");
  });

  it("shows the rejection reason only for rejected reports", () => {
    expect(renderReports([rejected], EN)).toContain("destination-unreachable");
    expect(renderReports([applied], EN)).not.toContain("reason");
  });
});

describe("renderDebugPanel", () => {
  it("renders nothing when debug is off", () => {
    expect(renderDebugPanel(view({ debug: false }), EN)).toBe("");
  });

  it("shows a placeholder before the first turn", () => {
    expect(renderDebugPanel(view(), EN)).toContain(EN.noTurns);
  });

  it("renders one section per turn and diffs only from the second snapshot on", () => {
    const reports: ReportDoc[] = [
      {
        transformation: { type: "move_player", target: "Hall" },
        outcome: "applied",
        reason: null,
      },
    ];
    const html = renderDebugPanel(
      view({
        debugEntries: [
          { index: 1, reports, snapshot: snapshot("Studio", ["Key"]) },
          { index: 2, reports, snapshot: snapshot("Hall", ["Key"]) },
        ],
      }),
      EN,
    );
    expect(html).toContain('data-turn="1"');
    expect(html).toContain('data-turn="2"');
    expect(html).toContain("player: Studio to Hall");
    const sections = html.split("<section").length - 1;
    expect(sections).toBe(2);
    expect(html.indexOf('class="diff"')).toBeGreaterThan(html.indexOf('data-turn="2"'));
  });

  it("renders reports without diffs when snapshots are absent", () => {
    const html = renderDebugPanel(
      view({
        debugEntries: [
          {
            index: 1,
            reports: [
              {
                transformation: { type: "unblock_location", target: "Vault" },
                outcome: "rejected",
                reason: "not-blocked",
              },
            ],
            snapshot: null,
          },
        ],
      }),
      EN,
    );
    expect(html).toContain("badge--rejected");
    expect(html).not.toContain('class="diff"');
  });
});

describe("renderBanner", () => {
  it("renders nothing for the empty banner", () => {
    expect(renderBanner({ kind: "none", message: "" }, EN)).toBe("");
  });

  it("gives each failure kind a distinct class and label", () => {
    const busy = renderBanner({ kind: "busy", message: "turn in flight" }, EN);
    const completed = renderBanner({ kind: "completed", message: "" }, EN);
    const backend = renderBanner({ kind: "backend", message: "bad reply" }, EN);
    const connection = renderBanner({ kind: "connection", message: "down" }, EN);
    expect(busy).toContain("banner--busy");
    expect(busy).toContain(EN.turnBusy);
    expect(completed).toContain("banner--completed");
    expect(completed).toContain(EN.objectiveComplete);
    expect(backend).toContain("banner--backend");
    expect(backend).toContain("bad reply");
    expect(connection).toContain("banner--connection");
  });

  it("offers a retry button only for connection trouble", () => {
    expect(renderBanner({ kind: "connection", message: "down" }, EN)).toContain(
      'class="retry"',
    );
    expect(renderBanner({ kind: "backend", message: "down" }, EN)).not.toContain(
      'class="retry"',
    );
  });
});

describe("locale chrome", () => {
  it("covers the same keys in every locale", () => {
    expect(Object.keys(CHROME.es).sort()).toEqual(Object.keys(CHROME.en).sort());
  });

  it("changes labels without touching game text", () => {
    expect(CHROME.es.send).not.toBe(CHROME.en.send);
    const spanish = renderBanner({ kind: "completed", message: "" }, CHROME.es);
    expect(spanish).toContain(CHROME.es.objectiveComplete);
    const scene = renderScene("The kitchen of the house.");
    expect(scene).toContain("The kitchen of the house.");
  });
});

describe("renderScenarioOptions", () => {
  it("lists titles with their scenario names, escaped", () => {
    const html = renderScenarioOptions([
      { name: "scenario-a", title: "Hojita <3", starting_scene: "" },
    ]);
    expect(html).toContain('value="scenario-a"');
    expect(html).toContain("Hojita &lt;3");
  });
});
