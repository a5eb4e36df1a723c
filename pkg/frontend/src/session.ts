/**
 * Session state machine for the guessing game.
 *
 * All transitions are pure (state in, state out), which makes a scripted
 * session reproducible down to the exported CSV bytes.
 */

import { Episode, LoadedEpisode } from "./episode.js";

export const DEFAULT_TICK_SECONDS = 0.6;
export const EPISODES_PER_SESSION = 10;

export const RESPONSE_HEADER =
  "participant_id,episode_id,policy_type,stop_time_secs,predicted_goal," +
  "true_goal,correct,confidence_1_7";

export interface ResponseRow {
  participant_id: string;
  episode_id: string;
  policy_type: string;
  stop_time_secs: number;
  predicted_goal: string;
  true_goal: string;
  correct: boolean;
  confidence_1_7: number;
}

export type Phase = "ready" | "playing" | "paused" | "predicting" | "done";

export interface SessionState {
  participantId: string;
  episodes: LoadedEpisode[];
  index: number;
  phase: Phase;
  t: number;
  stopT: number | null;
  responses: ResponseRow[];
  tickSeconds: number;
}

/** Deterministic 32-bit PRNG so pool sampling is reproducible by seed. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let x = a;
    x = Math.imul(x ^ (x >>> 15), x | 1);
    x ^= x + Math.imul(x ^ (x >>> 7), x | 61);
    return ((x ^ (x >>> 14)) >>> 0) / 4294967296;
  };
}

/** Sample `count` distinct episodes from the pool, seeded. */
export function samplePool(
  pool: LoadedEpisode[],
  count: number,
  seed: number,
): LoadedEpisode[] {
  if (pool.length < count) {
    throw new Error(`pool holds ${pool.length} episodes, need ${count}`);
  }
  const rng = mulberry32(seed);
  const indices = pool.map((_, i) => i);
  for (let i = indices.length - 1; i > 0; i--) {
    const j = Math.floor(rng() * (i + 1));
    [indices[i], indices[j]] = [indices[j], indices[i]];
  }
  return indices.slice(0, count).map((i) => pool[i]);
}

export function newSession(
  participantId: string,
  episodes: LoadedEpisode[],
  tickSeconds: number = DEFAULT_TICK_SECONDS,
): SessionState {
  if (episodes.length === 0) throw new Error("session needs episodes");
  return {
    participantId,
    episodes,
    index: 0,
    phase: "ready",
    t: 0,
    stopT: null,
    responses: [],
    tickSeconds,
  };
}

export function currentEpisode(state: SessionState): Episode {
  return state.episodes[state.index].episode;
}

/** Playback time of the whole episode (steps 0..T at one tick per step). */
export function episodeDuration(episode: Episode, tickSeconds: number): number {
  return (episode.steps.length - 1) * tickSeconds;
}

function frozen(state: SessionState, patch: Partial<SessionState>): SessionState {
  return { ...state, ...patch };
}

/** play / stop / step transitions while an episode is active. */
export function control(
  state: SessionState,
  command: "play" | "stop" | "step",
): SessionState {
  if (state.phase === "predicting" || state.phase === "done") return state;
  switch (command) {
    case "play":
      return frozen(state, { phase: "playing" });
    case "stop":
      // freeze playback and open the prediction form at this timestamp
      return frozen(state, { phase: "predicting", stopT: state.t });
    case "step": {
      if (state.phase === "playing") return state;
      const maxT = currentEpisode(state).steps.length - 1;
      return frozen(state, {
        phase: "paused",
        t: Math.min(state.t + 1, maxT),
      });
    }
  }
}

/** One playback tick: advances a playing episode a single grid step.
 * Running off the end counts as watching the full video. */
export function tick(state: SessionState): SessionState {
  if (state.phase !== "playing") return state;
  const maxT = currentEpisode(state).steps.length - 1;
  if (state.t >= maxT) {
    return frozen(state, { phase: "predicting", stopT: maxT });
  }
  return frozen(state, { t: state.t + 1 });
}

export function stopTimeSeconds(state: SessionState): number {
  const stopT = state.stopT ?? 0;
  return round6(stopT * state.tickSeconds);
}

function round6(x: number): number {
  return Math.round(x * 1e6) / 1e6;
}

/** Record a prediction and advance; after the last episode the session is
 * done and the score screen may be shown. Wrong predictions are logged with
 * the full episode duration, matching the analysis convention. */
export function submitResponse(
  state: SessionState,
  predicted: string,
  confidence: number,
): SessionState {
  if (state.phase !== "predicting") {
    throw new Error("no prediction form is open");
  }
  if (!Number.isInteger(confidence) || confidence < 1 || confidence > 7) {
    throw new Error(`confidence must be an integer in 1..7, got ${confidence}`);
  }
  const { id, episode } = state.episodes[state.index];
  if (!(predicted in episode.maze.goals)) {
    throw new Error(`predicted label ${predicted} not among this maze's goals`);
  }
  const correct = predicted === episode.true_goal;
  const duration = round6(episodeDuration(episode, state.tickSeconds));
  const row: ResponseRow = {
    participant_id: state.participantId,
    episode_id: id,
    policy_type: episode.policy_type,
    stop_time_secs: correct ? stopTimeSeconds(state) : duration,
    predicted_goal: predicted,
    true_goal: episode.true_goal,
    correct,
    confidence_1_7: confidence,
  };
  const responses = [...state.responses, row];
  const last = state.index + 1 >= state.episodes.length;
  return frozen(state, {
    responses,
    index: last ? state.index : state.index + 1,
    phase: last ? "done" : "ready",
    t: 0,
    stopT: null,
  });
}

/** Final score: correct answers weighted by how early playback stopped. */
export function score(state: SessionState): number {
  let total = 0;
  for (let i = 0; i < state.responses.length; i++) {
    const row = state.responses[i];
    if (!row.correct) continue;
    const duration = episodeDuration(
      state.episodes[i].episode,
      state.tickSeconds,
    );
    total += duration > 0 ? (duration - row.stop_time_secs) / duration : 1;
  }
  return total;
}

export function responsesCsv(state: SessionState): string {
  const lines = [RESPONSE_HEADER];
  for (const row of state.responses) {
    lines.push(
      [
        row.participant_id,
        row.episode_id,
        row.policy_type,
        String(row.stop_time_secs),
        row.predicted_goal,
        row.true_goal,
        row.correct ? "true" : "false",
        String(row.confidence_1_7),
      ].join(","),
    );
  }
  return lines.join("\n") + "\n";
}
