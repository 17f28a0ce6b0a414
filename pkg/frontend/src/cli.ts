#!/usr/bin/env node
/** report --kind <kind> --in <artifact> --out <figure.svg> [--eps 0.5,1]
 *
 * Writes the SVG figure plus a sidecar JSON (same path, .json extension)
 * holding exactly the plotted series.  Exit codes: 0 success, 2 usage or
 * input error.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { PLOT_KINDS, PlotKind, render } from "./plots.js";

export function sidecarPath(out: string): string {
  const ext = path.extname(out);
  return ext ? out.slice(0, -ext.length) + ".json" : out + ".json";
}

export function runReport(argv: string[]): string[] {
  if (argv[0] !== "report") {
    throw new Error(`unknown command ${JSON.stringify(argv[0])}; expected "report"`);
  }
  const opts = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    if (!flag.startsWith("--") || i + 1 >= argv.length) {
      throw new Error(`bad argument ${JSON.stringify(flag)}`);
    }
    opts.set(flag.slice(2), argv[i + 1]);
  }
  const kind = opts.get("kind");
  const input = opts.get("in");
  const out = opts.get("out");
  if (!kind || !input || !out) {
    throw new Error("required: --kind, --in, --out");
  }
  if (!(PLOT_KINDS as string[]).includes(kind)) {
    throw new Error(`unknown kind ${JSON.stringify(kind)}; one of ${PLOT_KINDS.join(", ")}`);
  }
  let eps: number[] | undefined;
  const epsText = opts.get("eps");
  if (epsText !== undefined) {
    eps = epsText.split(",").map((tok) => {
      const v = Number(tok);
      if (!Number.isFinite(v)) {
        throw new Error(`bad --eps entry ${JSON.stringify(tok)}`);
      }
      return v;
    });
  }
  const text = fs.readFileSync(input, "utf8");
  const figure = render({ kind: kind as PlotKind, input: text, source: input, eps });
  const side = sidecarPath(out);
  fs.writeFileSync(out, figure.svg);
  fs.writeFileSync(side, JSON.stringify(figure.sidecar, null, 2) + "\n");
  return [out, side];
}

export function main(argv: string[]): number {
  try {
    for (const out of runReport(argv)) {
      console.log(out);
    }
    return 0;
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    return 2;
  }
}

if (process.argv[1] && path.basename(process.argv[1]).startsWith("cli")) {
  process.exit(main(process.argv.slice(2)));
}
