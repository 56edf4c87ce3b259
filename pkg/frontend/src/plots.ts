/**
 * Figure generators. Strategy figures plot per-hand action(-sequence)
 * probabilities straight from a solver strategy JSON; convergence figures
 * plot metrics CSVs. Nothing here recomputes game quantities — inputs are
 * rendered as-is, with reference thresholds overlaid via the midpoint map.
 */

import {
  MetricsSeries,
  ReferenceDoc,
  StrategyDoc,
  handCurve,
  thresholdToHand,
} from "./formats.js";
import { PALETTE, PanelSpec, Series, VLine, renderFigure } from "./svg.js";

const ALG_COLORS: Record<string, string> = {
  gxfp: PALETTE.purple,
  cfr: PALETTE.lightblue,
  xfp: PALETTE.green,
};

// action indices in the CLI's canonical key schema
const ASYM = { check: 0, bet: 1, fold: 0, call: 1 };
const BR = {
  root: { check: 0, bet: 1 },
  k: { check: 0, bet: 1 },
  kb: { fold: 0, call: 1, raise: 2 },
  b: { fold: 0, call: 1, raise: 2 },
  kbr: { fold: 0, call: 1 },
  br: { fold: 0, call: 1 },
};

function hands(n: number): number[] {
  return Array.from({ length: n }, (_, i) => i + 1);
}

function mul(a: number[], b: number[]): number[] {
  return a.map((v, i) => v * b[i]);
}

function vlinesFor(thresholds: Record<string, number>, n: number, skip: string[] = []): VLine[] {
  return Object.entries(thresholds)
    .filter(([name]) => !skip.includes(name))
    .map(([name, x]) => ({ x: thresholdToHand(x, n), label: name }));
}

export function strategyPanels(doc: StrategyDoc, ref?: ReferenceDoc): PanelSpec[] {
  const game = doc.metadata.game;
  if (game === "asym") return asymPanels(doc, ref);
  if (game === "betraise") return betRaisePanels(doc, ref);
  throw new Error(`${doc.file}: unknown game "${game}" in metadata`);
}

function asymPanels(doc: StrategyDoc, ref?: ReferenceDoc): PanelSpec[] {
  const n = doc.metadata.hands;
  const x = hands(n);
  const bet = handCurve(doc, 1, "", ASYM.bet);
  const call = handCurve(doc, 2, "b", ASYM.call);
  return [
    {
      title: `player 1 bet probability (${doc.metadata.algorithm}, eps=${doc.metadata.epsilon})`,
      xLabel: "hand",
      yLabel: "probability",
      yDomain: [0, 1],
      series: [{ x, y: bet, color: PALETTE.purple, label: "bet" }],
      vlines: ref ? vlinesFor(ref.p1_thresholds, n) : [],
    },
    {
      title: "player 2 call probability facing a bet",
      xLabel: "hand",
      yLabel: "probability",
      yDomain: [0, 1],
      series: [{ x, y: call, color: PALETTE.green, label: "call" }],
      vlines: ref ? vlinesFor(ref.p2_thresholds.vs_bet ?? {}, n) : [],
    },
  ];
}

function betRaisePanels(doc: StrategyDoc, ref?: ReferenceDoc): PanelSpec[] {
  const n = doc.metadata.hands;
  const x = hands(n);
  const check = handCurve(doc, 1, "", BR.root.check);
  const bet = handCurve(doc, 1, "", BR.root.bet);
  const kbFold = handCurve(doc, 1, "kb", BR.kb.fold);
  const kbCall = handCurve(doc, 1, "kb", BR.kb.call);
  const kbRaise = handCurve(doc, 1, "kb", BR.kb.raise);
  const brFold = handCurve(doc, 1, "br", BR.br.fold);
  const brCall = handCurve(doc, 1, "br", BR.br.call);

  const p1: Series[] = [
    { x, y: mul(check, kbFold), color: PALETTE.purple, label: "check-fold" },
    { x, y: mul(check, kbCall), color: PALETTE.green, label: "check-call" },
    { x, y: mul(check, kbRaise), color: PALETTE.lightblue, label: "check-raise" },
    { x, y: mul(bet, brCall), color: PALETTE.darkblue, label: "bet-call" },
    { x, y: mul(bet, brFold), color: PALETTE.gold, label: "bet-fold" },
  ];

  const p2k = handCurve(doc, 2, "k", BR.k.check);
  const p2kBet = handCurve(doc, 2, "k", BR.k.bet);
  const kbrFold = handCurve(doc, 2, "kbr", BR.kbr.fold);
  const kbrCall = handCurve(doc, 2, "kbr", BR.kbr.call);
  const vsCheck: Series[] = [
    { x, y: p2k, color: PALETTE.green, label: "check" },
    { x, y: mul(p2kBet, kbrFold), color: PALETTE.purple, label: "bet-fold" },
    { x, y: mul(p2kBet, kbrCall), color: PALETTE.lightblue, label: "bet-call" },
  ];

  const vsBet: Series[] = [
    { x, y: handCurve(doc, 2, "b", BR.b.fold), color: PALETTE.gold, label: "fold" },
    { x, y: handCurve(doc, 2, "b", BR.b.call), color: PALETTE.darkblue, label: "call" },
    { x, y: handCurve(doc, 2, "b", BR.b.raise), color: PALETTE.red, label: "raise" },
  ];

  const free = ref?.free_thresholds ?? [];
  return [
    {
      title: `player 1 action sequences (${doc.metadata.algorithm}, eps=${doc.metadata.epsilon})`,
      xLabel: "hand",
      yLabel: "probability",
      yDomain: [0, 1],
      series: p1,
      vlines: ref ? vlinesFor(ref.p1_thresholds, n, free) : [],
    },
    {
      title: "player 2 response to a check",
      xLabel: "hand",
      yLabel: "probability",
      yDomain: [0, 1],
      series: vsCheck,
      vlines: ref ? vlinesFor(ref.p2_thresholds.vs_check ?? {}, n) : [],
    },
    {
      title: "player 2 response to a bet",
      xLabel: "hand",
      yLabel: "probability",
      yDomain: [0, 1],
      series: vsBet,
      vlines: ref ? vlinesFor(ref.p2_thresholds.vs_bet ?? {}, n) : [],
    },
  ];
}

export function plotStrategy(doc: StrategyDoc, ref?: ReferenceDoc): string {
  return renderFigure(strategyPanels(doc, ref));
}

export interface ConvergenceOptions {
  refValue?: number;
  linear?: boolean;
}

export function convergencePanels(
  all: MetricsSeries[],
  opts: ConvergenceOptions = {},
): PanelSpec[] {
  if (all.length === 0) throw new Error("no metrics series given");
  const color = (s: MetricsSeries, i: number) => {
    const alg = Object.keys(ALG_COLORS).find((a) => s.label.includes(a));
    return alg ? ALG_COLORS[alg] : Object.values(PALETTE)[i % 7];
  };
  const valueSeries: Series[] = all.map((s, i) => ({
    x: s.rows.map((r) => r.iteration),
    y: s.rows.map((r) => r.value),
    color: color(s, i),
    label: s.label,
  }));
  const explSeries: Series[] = all.map((s, i) => ({
    x: s.rows.map((r) => r.iteration),
    y: s.rows.map((r) => r.exploitability),
    color: color(s, i),
    label: s.label,
  }));
  return [
    {
      title: "expected value to player 1",
      xLabel: "iteration",
      yLabel: "value",
      series: valueSeries,
      hline: opts.refValue !== undefined ? { y: opts.refValue } : undefined,
    },
    {
      title: `total exploitability${opts.linear ? "" : " (log scale)"}`,
      xLabel: "iteration",
      yLabel: "exploitability",
      series: explSeries,
      logY: !opts.linear,
    },
  ];
}

export function plotConvergence(all: MetricsSeries[], opts: ConvergenceOptions = {}): string {
  return renderFigure(convergencePanels(all, opts));
}
