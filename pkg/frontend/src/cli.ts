/**
 * efgsolve-plots strategy <strategy.json> [--ref exact.json] [-o fig.svg]
 * efgsolve-plots convergence <metrics.csv...> [--ref-value V] [--linear] [-o fig.svg]
 */

import { writeFileSync } from "fs";
import { basename } from "path";

import { parseMetricsCsv, parseReferenceJson, parseStrategyJson } from "./formats.js";
import { plotConvergence, plotStrategy } from "./plots.js";

function usage(): never {
  console.error(
    "usage: efgsolve-plots strategy <strategy.json> [--ref exact.json] [-o out.svg]\n" +
      "       efgsolve-plots convergence <metrics.csv...> [--ref-value V] [--linear] [-o out.svg]",
  );
  process.exit(2);
}

export function main(argv: string[]): number {
  const [cmd, ...rest] = argv;
  if (!cmd) usage();

  const files: string[] = [];
  let out = "figure.svg";
  let refPath: string | undefined;
  let refValue: number | undefined;
  let linear = false;
  for (let i = 0; i < rest.length; i++) {
    const a = rest[i];
    if (a === "-o" || a === "--out") out = rest[++i];
    else if (a === "--ref") refPath = rest[++i];
    else if (a === "--ref-value") refValue = Number(rest[++i]);
    else if (a === "--linear") linear = true;
    else if (a.startsWith("-")) usage();
    else files.push(a);
  }
  if (files.length === 0) usage();

  try {
    let svg: string;
    if (cmd === "strategy") {
      if (files.length !== 1) usage();
      const ref = refPath ? parseReferenceJson(refPath) : undefined;
      svg = plotStrategy(parseStrategyJson(files[0]), ref);
    } else if (cmd === "convergence") {
      const series = files.map((f) => parseMetricsCsv(f, basename(f, ".csv")));
      svg = plotConvergence(series, { refValue, linear });
    } else {
      usage();
    }
    writeFileSync(out, svg);
    console.log(`wrote ${out}`);
    return 0;
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    return 1;
  }
}
