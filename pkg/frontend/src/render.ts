/**
 * Frame construction. `frameCommands` is a pure function of (episode, t):
 * replaying the same inputs yields an identical draw list, which is what the
 * tests pin down; `paint` merely executes the list on a canvas context.
 */

import { Episode } from "./episode.js";

export type DrawCommand =
  | { kind: "rect"; row: number; col: number; fill: string }
  | { kind: "circle"; row: number; col: number; fill: string; label: string }
  | { kind: "agent"; row: number; col: number };

const FLOOR = "#f7f5ef";
const WALL = "#3b3a36";

export function frameCommands(episode: Episode, t: number): DrawCommand[] {
  const maxT = episode.steps.length - 1;
  const clamped = Math.max(0, Math.min(t, maxT));
  const commands: DrawCommand[] = [];
  for (let r = 0; r < episode.maze.rows; r++) {
    for (let c = 0; c < episode.maze.cols; c++) {
      commands.push({ kind: "rect", row: r, col: c, fill: FLOOR });
    }
  }
  for (const [r, c] of episode.maze.walls) {
    commands.push({ kind: "rect", row: r, col: c, fill: WALL });
  }
  for (const label of Object.keys(episode.maze.goals).sort()) {
    const goal = episode.maze.goals[label];
    commands.push({
      kind: "circle",
      row: goal.cell[0],
      col: goal.cell[1],
      fill: goal.color,
      label,
    });
  }
  const [ar, ac] = episode.steps[clamped].cell;
  commands.push({ kind: "agent", row: ar, col: ac });
  return commands;
}

export function paint(
  ctx: CanvasRenderingContext2D,
  episode: Episode,
  t: number,
  cellSize: number,
): void {
  for (const cmd of frameCommands(episode, t)) {
    const x = cmd.col * cellSize;
    const y = cmd.row * cellSize;
    if (cmd.kind === "rect") {
      ctx.fillStyle = cmd.fill;
      ctx.fillRect(x, y, cellSize, cellSize);
      ctx.strokeStyle = "#d8d5cb";
      ctx.strokeRect(x, y, cellSize, cellSize);
    } else if (cmd.kind === "circle") {
      ctx.fillStyle = cmd.fill;
      ctx.beginPath();
      ctx.arc(x + cellSize / 2, y + cellSize / 2, cellSize * 0.36, 0, 2 * Math.PI);
      ctx.fill();
      ctx.fillStyle = "#ffffff";
      ctx.font = `${Math.floor(cellSize * 0.4)}px sans-serif`;
      ctx.textAlign = "center";
      ctx.textBaseline = "middle";
      ctx.fillText(cmd.label, x + cellSize / 2, y + cellSize / 2);
    } else {
      ctx.fillStyle = "#1d1d1f";
      const pad = cellSize * 0.22;
      ctx.fillRect(x + pad, y + pad, cellSize - 2 * pad, cellSize - 2 * pad);
    }
  }
}
