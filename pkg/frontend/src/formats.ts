/**
 * Parsers for the solver CLI's file formats: metrics CSV, strategy JSON and
 * the `exact --json` reference dump. Everything is validated up front so a
 * bad file fails with its name attached, not deep inside a plot routine.
 */

import { readFileSync } from "fs";

export interface MetricsRow {
  iteration: number;
  value: number;
  exploitability: number;
}

export interface MetricsSeries {
  file: string;
  label: string;
  rows: MetricsRow[];
}

export interface StrategyMetadata {
  game: string;
  hands: number;
  pot: number;
  bet: number;
  raise: number | null;
  epsilon: number;
  algorithm: string;
  iterations: number;
  seed: number | null;
  [k: string]: unknown;
}

export interface StrategyDoc {
  file: string;
  metadata: StrategyMetadata;
  strategy: Record<string, number[]>;
}

export interface ReferenceDoc {
  game: string;
  p1_thresholds: Record<string, number>;
  p2_thresholds: Record<string, Record<string, number>>;
  free_thresholds: string[];
  game_value: number | null;
}

export interface InfoSetKey {
  player: 1 | 2;
  hand: number;
  history: string;
}

const HEADER = "iteration,value,exploitability";

export function parseMetricsCsv(file: string, label?: string): MetricsSeries {
  const text = readFileSync(file, "utf8");
  const lines = text.split(/\r?\n/).filter((l) => l.trim() !== "");
  if (lines.length === 0) {
    throw new Error(`${file}: empty metrics CSV`);
  }
  if (lines[0].trim() !== HEADER) {
    throw new Error(`${file}: expected header "${HEADER}", got "${lines[0]}"`);
  }
  if (lines.length === 1) {
    throw new Error(`${file}: metrics CSV has a header but no rows`);
  }
  const rows = lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== 3) {
      throw new Error(`${file}: row ${i + 2} has ${parts.length} fields, expected 3`);
    }
    const [iteration, value, exploitability] = parts.map(Number);
    if (!Number.isInteger(iteration) || !isFinite(value) || !isFinite(exploitability)) {
      throw new Error(`${file}: row ${i + 2} is not numeric: "${line}"`);
    }
    return { iteration, value, exploitability };
  });
  return { file, label: label ?? file.replace(/.*\//, ""), rows };
}

export function parseStrategyJson(file: string): StrategyDoc {
  const text = readFileSync(file, "utf8");
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (e) {
    throw new Error(`${file}: invalid JSON: ${(e as Error).message}`);
  }
  const obj = doc as { metadata?: unknown; strategy?: unknown };
  if (typeof obj !== "object" || obj === null || !obj.strategy || !obj.metadata) {
    throw new Error(`${file}: expected an object with "metadata" and "strategy" blocks`);
  }
  const strategy = obj.strategy as Record<string, number[]>;
  for (const [key, probs] of Object.entries(strategy)) {
    parseKey(key, file);
    if (!Array.isArray(probs) || probs.some((p) => typeof p !== "number" || !isFinite(p))) {
      throw new Error(`${file}: non-numeric probabilities at "${key}"`);
    }
  }
  return { file, metadata: obj.metadata as StrategyMetadata, strategy };
}

export function parseReferenceJson(file: string): ReferenceDoc {
  const text = readFileSync(file, "utf8");
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (e) {
    throw new Error(`${file}: invalid JSON: ${(e as Error).message}`);
  }
  const ref = doc as ReferenceDoc;
  if (!ref.p1_thresholds || !ref.p2_thresholds) {
    throw new Error(`${file}: not a reference dump (missing threshold tables)`);
  }
  return ref;
}

const KEY_RE = /^P([12])\|h=(\d+)\|([kbfcr]*)$/;

export function parseKey(key: string, file = "<strategy>"): InfoSetKey {
  const m = KEY_RE.exec(key);
  if (!m) {
    throw new Error(`${file}: unknown information-set key schema: "${key}"`);
  }
  return { player: Number(m[1]) as 1 | 2, hand: Number(m[2]), history: m[3] };
}

/** Probability of `action` (by index) at `P{player}|h=i|{history}`, per hand. */
export function handCurve(
  doc: StrategyDoc,
  player: 1 | 2,
  history: string,
  action: number,
): number[] {
  const n = doc.metadata.hands;
  const curve: number[] = [];
  for (let i = 1; i <= n; i++) {
    const probs = doc.strategy[`P${player}|h=${i}|${history}`];
    if (!probs) {
      throw new Error(`${doc.file}: missing key P${player}|h=${i}|${history}`);
    }
    curve.push(probs[action]);
  }
  return curve;
}

/**
 * Continuous threshold -> 1-based hand coordinate under the midpoint map
 * x = (i - 0.5) / N, i.e. i = N*x + 0.5.
 */
export function thresholdToHand(x: number, hands: number): number {
  return hands * x + 0.5;
}
