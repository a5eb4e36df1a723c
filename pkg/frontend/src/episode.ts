/**
 * Episode documents and their validation.
 *
 * Episodes arrive as JSON exported by the benchmark harness; every file is
 * validated before a session may use it, and validation failures carry the
 * file name and the offending field path.
 */

export type Cell = [number, number];

export interface GoalEntry {
  cell: Cell;
  color: string;
}

export interface EpisodeStep {
  t: number;
  cell: Cell;
  action: "up" | "down" | "left" | "right" | "noop";
}

export interface Episode {
  maze: {
    rows: number;
    cols: number;
    walls: Cell[];
    goals: Record<string, GoalEntry>;
  };
  start: Cell;
  true_goal: string;
  policy_type: "legible" | "optimal";
  steps: EpisodeStep[];
  meta: { beta: number; gamma: number; seed: number };
}

export class SchemaError extends Error {
  constructor(
    public readonly file: string,
    public readonly path: string,
    message: string,
  ) {
    super(`${file}: ${path}: ${message}`);
    this.name = "SchemaError";
  }
}

const ACTIONS = new Set(["up", "down", "left", "right", "noop"]);

function fail(file: string, path: string, message: string): never {
  throw new SchemaError(file, path, message);
}

function asRecord(doc: unknown, file: string, path: string): Record<string, unknown> {
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    fail(file, path, "expected an object");
  }
  return doc as Record<string, unknown>;
}

function asCell(value: unknown, file: string, path: string): Cell {
  if (
    !Array.isArray(value) ||
    value.length !== 2 ||
    !value.every((x) => Number.isInteger(x))
  ) {
    fail(file, path, "expected [row, col] integers");
  }
  return [value[0], value[1]] as Cell;
}

function asCount(value: unknown, file: string, path: string): number {
  if (!Number.isInteger(value) || (value as number) < 1) {
    fail(file, path, "expected a positive integer");
  }
  return value as number;
}

function inBounds(cell: Cell, rows: number, cols: number): boolean {
  return cell[0] >= 0 && cell[0] < rows && cell[1] >= 0 && cell[1] < cols;
}

/** Validate one episode document; throws SchemaError on the first problem. */
export function validateEpisode(doc: unknown, file: string): Episode {
  const root = asRecord(doc, file, "$");
  const maze = asRecord(root.maze, file, "maze");
  const rows = asCount(maze.rows, file, "maze.rows");
  const cols = asCount(maze.cols, file, "maze.cols");

  if (!Array.isArray(maze.walls)) fail(file, "maze.walls", "expected a list");
  const walls = new Set<string>();
  maze.walls.forEach((wall, i) => {
    const cell = asCell(wall, file, `maze.walls[${i}]`);
    if (!inBounds(cell, rows, cols)) {
      fail(file, `maze.walls[${i}]`, "wall outside the grid");
    }
    walls.add(cell.join(","));
  });

  const goalsRaw = asRecord(maze.goals, file, "maze.goals");
  const labels = Object.keys(goalsRaw);
  if (labels.length < 1) fail(file, "maze.goals", "needs at least one goal");
  const goals: Record<string, GoalEntry> = {};
  for (const label of labels) {
    const entry = asRecord(goalsRaw[label], file, `maze.goals.${label}`);
    const cell = asCell(entry.cell, file, `maze.goals.${label}.cell`);
    if (!inBounds(cell, rows, cols)) {
      fail(file, `maze.goals.${label}.cell`, "goal outside the grid");
    }
    if (walls.has(cell.join(","))) {
      fail(file, `maze.goals.${label}.cell`, "goal sits on a wall");
    }
    if (typeof entry.color !== "string" || !/^#[0-9a-f]{6}$/i.test(entry.color)) {
      fail(file, `maze.goals.${label}.color`, "expected #rrggbb");
    }
    goals[label] = { cell, color: entry.color };
  }

  const start = asCell(root.start, file, "start");
  if (!inBounds(start, rows, cols)) fail(file, "start", "start outside the grid");

  if (typeof root.true_goal !== "string" || !(root.true_goal in goals)) {
    fail(file, "true_goal", "must name one of the maze's goals");
  }
  if (root.policy_type !== "legible" && root.policy_type !== "optimal") {
    fail(file, "policy_type", "must be legible or optimal");
  }

  if (!Array.isArray(root.steps) || root.steps.length === 0) {
    fail(file, "steps", "expected a non-empty list");
  }
  const steps: EpisodeStep[] = root.steps.map((raw, i) => {
    const step = asRecord(raw, file, `steps[${i}]`);
    if (step.t !== i) fail(file, `steps[${i}].t`, `expected t=${i}`);
    const cell = asCell(step.cell, file, `steps[${i}].cell`);
    if (!inBounds(cell, rows, cols)) {
      fail(file, `steps[${i}].cell`, "step leaves the grid");
    }
    if (walls.has(cell.join(","))) {
      fail(file, `steps[${i}].cell`, "step sits on a wall");
    }
    if (typeof step.action !== "string" || !ACTIONS.has(step.action)) {
      fail(file, `steps[${i}].action`, "unknown action");
    }
    return { t: i, cell, action: step.action as EpisodeStep["action"] };
  });
  if (steps[0].cell.join(",") !== start.join(",")) {
    fail(file, "steps[0].cell", "first step must match start");
  }

  const meta = asRecord(root.meta, file, "meta");
  for (const key of ["beta", "gamma", "seed"]) {
    if (typeof meta[key] !== "number") {
      fail(file, `meta.${key}`, "expected a number");
    }
  }

  return {
    maze: { rows, cols, walls: [...maze.walls] as Cell[], goals },
    start,
    true_goal: root.true_goal,
    policy_type: root.policy_type,
    steps,
    meta: meta as unknown as Episode["meta"],
  };
}

export interface LoadedEpisode {
  id: string;
  episode: Episode;
}

export interface PoolResult {
  episodes: LoadedEpisode[];
  errors: SchemaError[];
}

/** Validate a whole pool; schema violations are collected per file. */
export function loadPool(
  docs: Array<{ file: string; doc: unknown }>,
): PoolResult {
  const episodes: LoadedEpisode[] = [];
  const errors: SchemaError[] = [];
  for (const { file, doc } of docs) {
    try {
      episodes.push({
        id: file.replace(/\.json$/, ""),
        episode: validateEpisode(doc, file),
      });
    } catch (err) {
      if (err instanceof SchemaError) errors.push(err);
      else throw err;
    }
  }
  return { episodes, errors };
}
