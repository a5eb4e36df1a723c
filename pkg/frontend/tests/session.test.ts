import { describe, expect, it } from "vitest";

import { Episode, LoadedEpisode } from "../src/episode.js";
import { frameCommands } from "../src/render.js";
import {
  control,
  episodeDuration,
  newSession,
  RESPONSE_HEADER,
  responsesCsv,
  samplePool,
  score,
  stopTimeSeconds,
  submitResponse,
  tick,
} from "../src/session.js";

function makeEpisode(pathCols: number[], trueGoal = "A"): Episode {
  // one-row corridor; the agent walks right along the given columns
  const cols = 8;
  return {
    maze: {
      rows: 1,
      cols,
      walls: [],
      goals: {
        A: { cell: [0, cols - 1], color: "#e6194b" },
        B: { cell: [0, 0], color: "#4363d8" },
      },
    },
    start: [0, pathCols[0]],
    true_goal: trueGoal,
    policy_type: "legible",
    steps: pathCols.map((c, t) => ({
      t,
      cell: [0, c] as [number, number],
      action: t === pathCols.length - 1 ? "noop" : "right",
    })),
    meta: { beta: 1, gamma: 0.9, seed: 0 },
  };
}

function loaded(id: string, episode: Episode): LoadedEpisode {
  return { id, episode };
}

const EP5 = makeEpisode([2, 3, 4, 5, 6, 7]); // six steps, duration 5 ticks

describe("playback controls", () => {
  it("stop at t=0 records a zero stop time and opens the form", () => {
    let s = newSession("p", [loaded("e0", EP5)]);
    s = control(s, "stop");
    expect(s.phase).toBe("predicting");
    expect(s.stopT).toBe(0);
    expect(stopTimeSeconds(s)).toBe(0);
  });

  it("playing through the episode stops at the full duration", () => {
    let s = newSession("p", [loaded("e0", EP5)]);
    s = control(s, "play");
    for (let i = 0; i < 50 && s.phase === "playing"; i++) s = tick(s);
    expect(s.phase).toBe("predicting");
    expect(stopTimeSeconds(s)).toBeCloseTo(episodeDuration(EP5, 0.6), 9);
  });

  it("step advances exactly one frame while paused", () => {
    let s = newSession("p", [loaded("e0", EP5)]);
    s = control(s, "step");
    s = control(s, "step");
    s = control(s, "step");
    expect(s.t).toBe(3);
    const agent = frameCommands(EP5, s.t).at(-1)!;
    expect(agent).toEqual({ kind: "agent", row: 0, col: 5 });
  });

  it("step clamps at the final frame", () => {
    let s = newSession("p", [loaded("e0", EP5)]);
    for (let i = 0; i < 20; i++) s = control(s, "step");
    expect(s.t).toBe(EP5.steps.length - 1);
  });
});

describe("responses and scoring", () => {
  it("correct immediate prediction contributes a full point", () => {
    let s = newSession("p", [loaded("e0", EP5)]);
    s = control(s, "stop");
    s = submitResponse(s, "A", 7);
    expect(s.phase).toBe("done");
    expect(score(s)).toBe(1.0);
    expect(s.responses[0].stop_time_secs).toBe(0);
  });

  it("wrong prediction contributes nothing and logs the full length", () => {
    let s = newSession("p", [loaded("e0", EP5)]);
    s = control(s, "stop");
    s = submitResponse(s, "B", 2);
    expect(score(s)).toBe(0);
    expect(s.responses[0].correct).toBe(false);
    expect(s.responses[0].stop_time_secs).toBeCloseTo(
      episodeDuration(EP5, 0.6),
      9,
    );
  });

  it("rejects out-of-range confidence", () => {
    let s = newSession("p", [loaded("e0", EP5)]);
    s = control(s, "stop");
    expect(() => submitResponse(s, "A", 0)).toThrowError(/confidence/);
    expect(() => submitResponse(s, "A", 8)).toThrowError(/confidence/);
    expect(() => submitResponse(s, "A", 3.5)).toThrowError(/confidence/);
  });

  it("rejects labels outside the episode's goals", () => {
    let s = newSession("p", [loaded("e0", EP5)]);
    s = control(s, "stop");
    expect(() => submitResponse(s, "Q", 4)).toThrowError(/label/);
  });

  it("a ten-episode session yields a ten-row CSV", () => {
    const episodes = Array.from({ length: 10 }, (_, i) =>
      loaded(`e${i}`, EP5),
    );
    let s = newSession("p", episodes);
    for (let i = 0; i < 10; i++) {
      s = control(s, "step");
      s = control(s, "stop");
      s = submitResponse(s, i % 2 === 0 ? "A" : "B", 4);
    }
    expect(s.phase).toBe("done");
    const lines = responsesCsv(s).trimEnd().split("\n");
    expect(lines[0]).toBe(RESPONSE_HEADER);
    expect(lines).toHaveLength(11);
    expect(s.responses.filter((r) => r.correct)).toHaveLength(5);
  });
});

describe("pool sampling and rendering purity", () => {
  it("samples deterministically by seed", () => {
    const pool = Array.from({ length: 37 }, (_, i) =>
      loaded(`e${i}`, EP5),
    );
    const a = samplePool(pool, 10, 42).map((e) => e.id);
    const b = samplePool(pool, 10, 42).map((e) => e.id);
    const c = samplePool(pool, 10, 43).map((e) => e.id);
    expect(a).toEqual(b);
    expect(a).not.toEqual(c);
    expect(new Set(a).size).toBe(10);
  });

  it("frame construction is a pure function of (episode, t)", () => {
    for (const t of [0, 2, 5, 99]) {
      expect(frameCommands(EP5, t)).toEqual(frameCommands(EP5, t));
    }
    const agentAt0 = frameCommands(EP5, 0).at(-1)!;
    expect(agentAt0).toEqual({ kind: "agent", row: 0, col: 2 });
  });
});
