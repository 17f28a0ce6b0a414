import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";
import { PLOT_KINDS, PlotKind, render } from "../src/plots.js";

const FIXTURES = path.join(path.dirname(fileURLToPath(import.meta.url)), "fixtures");

function fixture(name: string): string {
  return fs.readFileSync(path.join(FIXTURES, name), "utf8");
}

const INPUT_FOR: Record<PlotKind, string> = {
  cesaro_decay: "cesaro.csv",
  davenport_decay: "expsum.csv",
  geometric_partial: "geom.csv",
  kbsz_bars: "kbsz.json",
};

describe("render", () => {
  it("renders all four kinds from real artifacts without error", () => {
    for (const kind of PLOT_KINDS) {
      const fig = render({ kind, input: fixture(INPUT_FOR[kind]) });
      expect(fig.svg.startsWith("<svg ")).toBe(true);
      expect(fig.svg.endsWith("</svg>\n")).toBe(true);
      expect(fig.sidecar.kind).toBe(kind);
      expect(fig.sidecar.series.length).toBeGreaterThan(0);
    }
  });

  it("is deterministic", () => {
    for (const kind of PLOT_KINDS) {
      const a = render({ kind, input: fixture(INPUT_FOR[kind]) });
      const b = render({ kind, input: fixture(INPUT_FOR[kind]) });
      expect(a.svg).toBe(b.svg);
      expect(JSON.stringify(a.sidecar)).toBe(JSON.stringify(b.sidecar));
    }
  });

  it("sidecar equals the source CSV values exactly", () => {
    const text = fixture("cesaro.csv");
    const table = parseCsv(text);
    const fig = render({ kind: "cesaro_decay", input: text });
    for (const s of fig.sidecar.series) {
      const col = table.header.indexOf(s.name);
      expect(col).toBeGreaterThanOrEqual(0);
      expect(s.y).toEqual(table.rows.map((r) => Number(r[col])));
      expect(s.x).toEqual(table.rows.map((r) => Number(r[0])));
    }
  });

  it("draws one series per requested eps plus the base curve", () => {
    const fig = render({ kind: "cesaro_decay", input: fixture("cesaro.csv"), eps: [0.5, 1] });
    expect(fig.sidecar.series.map((s) => s.name)).toEqual(["D", "ratio_eps_0.5", "ratio_eps_1"]);
  });

  it("errors on an eps with no matching column", () => {
    expect(() =>
      render({ kind: "cesaro_decay", input: fixture("cesaro.csv"), eps: [3], source: "c.csv" }),
    ).toThrow(/c\.csv: missing column "ratio_eps_3"/);
  });

  it("errors on a single-row curve input", () => {
    const text = fixture("cesaro.csv").split("\n").slice(0, 2).join("\n") + "\n";
    expect(() => render({ kind: "cesaro_decay", input: text, source: "c.csv" })).toThrow(
      /needs at least 2 rows, got 1/,
    );
  });

  it("errors on a missing column", () => {
    expect(() =>
      render({ kind: "davenport_decay", input: fixture("cesaro.csv"), source: "c.csv" }),
    ).toThrow(/missing column "sup_norm"/);
  });

  it("kbsz bars: one bar per pair plus the threshold line", () => {
    const data = JSON.parse(fixture("kbsz.json"));
    const fig = render({ kind: "kbsz_bars", input: fixture("kbsz.json") });
    const bars = fig.svg.match(/<rect x=/g) ?? [];
    expect(bars.length).toBe(data.pairs.length);
    expect(fig.svg).toContain("stroke-dasharray");
    expect(fig.sidecar.threshold).toBe(data.epsilon);
    expect(fig.sidecar.series[0].y).toEqual(data.pairs.map((r: { sup_upper: number }) => r.sup_upper));
  });

  it("kbsz bars: rejects bad or empty JSON", () => {
    expect(() => render({ kind: "kbsz_bars", input: "{not json", source: "k.json" })).toThrow(
      /k\.json: bad JSON/,
    );
    expect(() =>
      render({ kind: "kbsz_bars", input: '{"epsilon": 0.5, "pairs": []}', source: "k.json" }),
    ).toThrow(/empty input/);
    expect(() => render({ kind: "kbsz_bars", input: "{}", source: "k.json" })).toThrow(
      /missing "epsilon" or "pairs"/,
    );
  });
});
