import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import {
  handCurve,
  parseKey,
  parseMetricsCsv,
  parseReferenceJson,
  parseStrategyJson,
  thresholdToHand,
} from "../src/formats.js";

const FIX = join(__dirname, "fixtures");

function tmpFile(name: string, body: string): string {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  const file = join(dir, name);
  writeFileSync(file, body);
  return file;
}

describe("parseMetricsCsv", () => {
  it("parses fixture rows with numeric fields", () => {
    const s = parseMetricsCsv(join(FIX, "asym_gxfp.csv"));
    expect(s.rows.length).toBe(20);
    expect(s.rows[0].iteration).toBe(200);
    expect(s.rows.at(-1)!.iteration).toBe(4000);
    for (const r of s.rows) {
      expect(Number.isFinite(r.value)).toBe(true);
      expect(r.exploitability).toBeGreaterThanOrEqual(0);
    }
  });

  it("rejects an empty file, naming it", () => {
    const f = tmpFile("empty.csv", "");
    expect(() => parseMetricsCsv(f)).toThrowError(new RegExp("empty.csv"));
  });

  it("rejects a header-only file, naming it", () => {
    const f = tmpFile("only.csv", "iteration,value,exploitability\n");
    expect(() => parseMetricsCsv(f)).toThrowError(new RegExp("only.csv"));
  });

  it("rejects a wrong header", () => {
    const f = tmpFile("bad.csv", "iter,val\n1,2\n");
    expect(() => parseMetricsCsv(f)).toThrow(/header/);
  });

  it("rejects non-numeric rows", () => {
    const f = tmpFile("nan.csv", "iteration,value,exploitability\n10,abc,0.1\n");
    expect(() => parseMetricsCsv(f)).toThrow(/nan.csv/);
  });
});

describe("parseStrategyJson", () => {
  it("parses fixture metadata and strategy rows", () => {
    const doc = parseStrategyJson(join(FIX, "asym_gxfp.json"));
    expect(doc.metadata.game).toBe("asym");
    expect(doc.metadata.hands).toBe(20);
    expect(doc.metadata.algorithm).toBe("gxfp");
    expect(Object.keys(doc.strategy).length).toBe(40);
    for (const probs of Object.values(doc.strategy)) {
      const sum = probs.reduce((a, b) => a + b, 0);
      expect(sum).toBeCloseTo(1, 9);
    }
  });

  it("rejects malformed JSON with the file name", () => {
    const f = tmpFile("trunc.json", '{"metadata": {');
    expect(() => parseStrategyJson(f)).toThrow(/trunc.json/);
  });

  it("rejects documents without a strategy block", () => {
    const f = tmpFile("nometa.json", '{"metadata": {"game": "asym", "hands": 3}}');
    expect(() => parseStrategyJson(f)).toThrow(/strategy/);
  });

  it("rejects keys outside the schema", () => {
    const f = tmpFile(
      "badkey.json",
      JSON.stringify({
        metadata: { game: "asym", hands: 2 },
        strategy: { "what|is|this": [0.5, 0.5] },
      }),
    );
    expect(() => parseStrategyJson(f)).toThrow(/key/);
  });
});

describe("parseReferenceJson", () => {
  it("parses the bet/raise reference dump", () => {
    const ref = parseReferenceJson(join(FIX, "br_ref.json"));
    expect(ref.game).toBe("betraise");
    expect(ref.free_thresholds).toEqual(["x5", "x8"]);
    expect(ref.p1_thresholds.x1).toBeCloseTo(64 / 1083, 12);
    expect(ref.p2_thresholds.vs_bet.y2_bet).toBeCloseTo(10 / 19, 12);
    expect(ref.game_value).toBeCloseTo(-44 / 1083, 12);
  });

  it("parses the asymmetric reference dump", () => {
    const ref = parseReferenceJson(join(FIX, "asym_ref.json"));
    expect(ref.p1_thresholds.x1).toBeCloseTo(1 / 9, 12);
    expect(ref.p1_thresholds.x2).toBeCloseTo(7 / 9, 12);
    expect(ref.p2_thresholds.vs_bet.y1).toBeCloseTo(5 / 9, 12);
  });

  it("rejects a non-reference document", () => {
    const f = tmpFile("notref.json", "{}");
    expect(() => parseReferenceJson(f)).toThrow(/threshold/);
  });
});

describe("keys and curves", () => {
  it("parseKey splits player, hand, history", () => {
    expect(parseKey("P1|h=7|kb")).toEqual({ player: 1, hand: 7, history: "kb" });
    expect(parseKey("P2|h=1|")).toEqual({ player: 2, hand: 1, history: "" });
    expect(() => parseKey("P3|h=1|")).toThrow(/schema/);
  });

  it("handCurve walks hands in order", () => {
    const doc = parseStrategyJson(join(FIX, "asym_gxfp.json"));
    const bet = handCurve(doc, 1, "", 1);
    expect(bet.length).toBe(20);
    // strong hands value-bet nearly always
    expect(bet.at(-1)!).toBeGreaterThan(0.9);
  });

  it("thresholdToHand uses the midpoint map", () => {
    // x = (i - 0.5)/N  =>  i = N*x + 0.5
    expect(thresholdToHand(0.5, 100)).toBe(50.5);
    expect(thresholdToHand(1 / 9, 20)).toBeCloseTo(20 / 9 + 0.5, 12);
  });
});
