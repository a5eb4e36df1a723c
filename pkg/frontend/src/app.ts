/**
 * Browser wiring: loads an episode pool, drives the session state machine
 * from the play/stop/step buttons and renders each frame to the canvas.
 *
 * URL parameters: ?condition=legible|optimal picks the pool,
 * ?tick=<seconds> overrides the playback speed, ?seed=<int> pins the
 * episode sampling.
 */

import { loadPool, LoadedEpisode } from "./episode.js";
import { paint } from "./render.js";
import {
  control,
  currentEpisode,
  DEFAULT_TICK_SECONDS,
  EPISODES_PER_SESSION,
  newSession,
  responsesCsv,
  samplePool,
  score,
  SessionState,
  stopTimeSeconds,
  submitResponse,
  tick,
} from "./session.js";

const CELL_SIZE = 40;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

async function fetchPool(condition: string): Promise<LoadedEpisode[]> {
  const base = `pools/${condition}`;
  const manifest = await (await fetch(`${base}/manifest.json`)).json();
  const docs = await Promise.all(
    (manifest.episodes as string[]).map(async (file) => ({
      file,
      doc: await (await fetch(`${base}/${file}`)).json(),
    })),
  );
  const { episodes, errors } = loadPool(docs);
  if (errors.length > 0) {
    const listing = errors.map((e) => e.message).join("\n");
    byId<HTMLDivElement>("status").textContent =
      `schema errors in pool:\n${listing}`;
    throw new Error(listing);
  }
  return episodes;
}

class App {
  state: SessionState;
  timer: number | null = null;
  ctx: CanvasRenderingContext2D;

  constructor(episodes: LoadedEpisode[], tickSeconds: number, seed: number) {
    const picked = samplePool(
      episodes,
      Math.min(EPISODES_PER_SESSION, episodes.length),
      seed,
    );
    const participant = `p-${Math.random().toString(36).slice(2, 10)}`;
    this.state = newSession(participant, picked, tickSeconds);
    const canvas = byId<HTMLCanvasElement>("board");
    this.ctx = canvas.getContext("2d")!;
    byId<HTMLButtonElement>("play").onclick = () => this.dispatch("play");
    byId<HTMLButtonElement>("stop").onclick = () => this.dispatch("stop");
    byId<HTMLButtonElement>("step").onclick = () => this.dispatch("step");
    this.render();
  }

  dispatch(command: "play" | "stop" | "step"): void {
    this.state = control(this.state, command);
    if (command === "play" && this.timer === null) {
      this.timer = window.setInterval(
        () => this.onTick(),
        this.state.tickSeconds * 1000,
      );
    }
    if (command !== "play") this.stopTimer();
    this.render();
  }

  stopTimer(): void {
    if (this.timer !== null) {
      window.clearInterval(this.timer);
      this.timer = null;
    }
  }

  onTick(): void {
    this.state = tick(this.state);
    if (this.state.phase !== "playing") this.stopTimer();
    this.render();
  }

  submit(label: string, confidence: number): void {
    this.state = submitResponse(this.state, label, confidence);
    this.render();
  }

  render(): void {
    const status = byId<HTMLDivElement>("status");
    const form = byId<HTMLDivElement>("prediction");
    const done = byId<HTMLDivElement>("done");
    if (this.state.phase === "done") {
      form.style.display = "none";
      done.style.display = "block";
      const total = score(this.state);
      byId<HTMLSpanElement>("score").textContent =
        `${total.toFixed(2)} / ${this.state.episodes.length}`;
      const blob = new Blob([responsesCsv(this.state)], { type: "text/csv" });
      const link = byId<HTMLAnchorElement>("download");
      link.href = URL.createObjectURL(blob);
      link.download = `responses-${this.state.participantId}.csv`;
      return;
    }
    const episode = currentEpisode(this.state);
    const canvas = byId<HTMLCanvasElement>("board");
    canvas.width = episode.maze.cols * CELL_SIZE;
    canvas.height = episode.maze.rows * CELL_SIZE;
    paint(this.ctx, episode, this.state.t, CELL_SIZE);
    status.textContent =
      `episode ${this.state.index + 1} of ${this.state.episodes.length}` +
      ` — where is the robot going?`;
    if (this.state.phase === "predicting") {
      form.style.display = "block";
      byId<HTMLSpanElement>("stopped-at").textContent =
        `${stopTimeSeconds(this.state).toFixed(1)} s`;
      const choices = byId<HTMLDivElement>("choices");
      choices.innerHTML = "";
      for (const label of Object.keys(episode.maze.goals).sort()) {
        const btn = document.createElement("button");
        btn.textContent = label;
        btn.style.background = episode.maze.goals[label].color;
        btn.className = "goal-choice";
        btn.onclick = () => {
          const conf = Number(
            (byId<HTMLInputElement>("confidence")).value,
          );
          try {
            this.submit(label, conf);
          } catch (err) {
            window.alert(String(err));
          }
        };
        choices.appendChild(btn);
      }
    } else {
      form.style.display = "none";
    }
  }
}

export async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const condition = params.get("condition") === "optimal" ? "optimal" : "legible";
  const tickSeconds = Number(params.get("tick") ?? DEFAULT_TICK_SECONDS);
  const seed = Number(params.get("seed") ?? Date.now() % 2147483647);
  const pool = await fetchPool(condition);
  new App(pool, tickSeconds, seed);
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  window.addEventListener("DOMContentLoaded", () => {
    start().catch((err) => {
      byId<HTMLDivElement>("status").textContent = String(err);
    });
  });
}
