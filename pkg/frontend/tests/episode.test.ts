import { readdirSync, readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { loadPool, SchemaError, validateEpisode } from "../src/episode.js";

const POOLS = join(__dirname, "..", "pools");

function minimalDoc(): any {
  return {
    maze: {
      rows: 2,
      cols: 3,
      walls: [[1, 2]],
      goals: { A: { cell: [0, 0], color: "#e6194b" } },
    },
    start: [0, 2],
    true_goal: "A",
    policy_type: "optimal",
    steps: [
      { t: 0, cell: [0, 2], action: "left" },
      { t: 1, cell: [0, 1], action: "left" },
      { t: 2, cell: [0, 0], action: "noop" },
    ],
    meta: { beta: 1.0, gamma: 0.9, seed: 7 },
  };
}

function readPool(condition: string) {
  const dir = join(POOLS, condition);
  const manifest = JSON.parse(readFileSync(join(dir, "manifest.json"), "utf8"));
  return (manifest.episodes as string[]).map((file) => ({
    file,
    doc: JSON.parse(readFileSync(join(dir, file), "utf8")),
  }));
}

describe("episode validation", () => {
  it("accepts a minimal single-episode pool", () => {
    const { episodes, errors } = loadPool([
      { file: "only.json", doc: minimalDoc() },
    ]);
    expect(errors).toHaveLength(0);
    expect(episodes).toHaveLength(1);
    expect(episodes[0].id).toBe("only");
  });

  it("loads episodes without any response-side fields", () => {
    // confidence etc. belong to responses, not episodes
    const doc = minimalDoc();
    expect("confidence" in doc).toBe(false);
    expect(() => validateEpisode(doc, "x.json")).not.toThrow();
  });

  it("names the step index when a step leaves the grid", () => {
    const doc = minimalDoc();
    doc.steps[1].cell = [0, 9];
    try {
      validateEpisode(doc, "bad.json");
      expect.unreachable("validation should have failed");
    } catch (err) {
      expect(err).toBeInstanceOf(SchemaError);
      expect((err as SchemaError).path).toBe("steps[1].cell");
      expect((err as SchemaError).file).toBe("bad.json");
    }
  });

  it("rejects a step standing on a wall", () => {
    const doc = minimalDoc();
    doc.steps[1].cell = [1, 2];
    expect(() => validateEpisode(doc, "x.json")).toThrowError(/steps\[1\]/);
  });

  it("rejects unknown actions and bad colors", () => {
    const bad1 = minimalDoc();
    bad1.steps[0].action = "teleport";
    expect(() => validateEpisode(bad1, "x.json")).toThrowError(/action/);
    const bad2 = minimalDoc();
    bad2.maze.goals.A.color = "red";
    expect(() => validateEpisode(bad2, "x.json")).toThrowError(/rrggbb/);
  });

  it("rejects a true_goal that is not a goal", () => {
    const doc = minimalDoc();
    doc.true_goal = "Z";
    expect(() => validateEpisode(doc, "x.json")).toThrowError(/true_goal/);
  });

  it("collects per-file errors without dropping good files", () => {
    const good = minimalDoc();
    const bad = minimalDoc();
    bad.start = [9, 9];
    const { episodes, errors } = loadPool([
      { file: "good.json", doc: good },
      { file: "bad.json", doc: bad },
    ]);
    expect(episodes.map((e) => e.id)).toEqual(["good"]);
    expect(errors).toHaveLength(1);
    expect(errors[0].file).toBe("bad.json");
  });
});

describe("exported pools", () => {
  for (const condition of ["legible", "optimal"]) {
    it(`loads the ${condition} pool with zero schema errors`, () => {
      const docs = readPool(condition);
      expect(docs.length).toBe(37);
      const { episodes, errors } = loadPool(docs);
      expect(errors).toHaveLength(0);
      expect(episodes).toHaveLength(37);
      for (const { episode } of episodes) {
        expect(episode.policy_type).toBe(condition);
        expect(Object.keys(episode.maze.goals)).toHaveLength(6);
      }
    });
  }

  it("lists files for every pool directory entry", () => {
    for (const condition of ["legible", "optimal"]) {
      const dir = join(POOLS, condition);
      const onDisk = readdirSync(dir).filter((f) => f.startsWith("episode-"));
      const manifest = JSON.parse(
        readFileSync(join(dir, "manifest.json"), "utf8"),
      );
      expect(new Set(manifest.episodes)).toEqual(new Set(onDisk));
    }
  });
});
