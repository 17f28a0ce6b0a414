import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { main, runReport, sidecarPath } from "../src/cli.js";

const FIXTURES = path.join(path.dirname(fileURLToPath(import.meta.url)), "fixtures");

let tmp: string;
beforeAll(() => {
  tmp = fs.mkdtempSync(path.join(os.tmpdir(), "report-plots-"));
});
afterAll(() => {
  fs.rmSync(tmp, { recursive: true, force: true });
});

describe("sidecarPath", () => {
  it("swaps the extension", () => {
    expect(sidecarPath("/a/b/fig.svg")).toBe("/a/b/fig.json");
    expect(sidecarPath("fig")).toBe("fig.json");
  });
});

describe("runReport", () => {
  it("writes the figure and an exact sidecar", () => {
    const out = path.join(tmp, "cesaro.svg");
    const written = runReport([
      "report",
      "--kind",
      "cesaro_decay",
      "--in",
      path.join(FIXTURES, "cesaro.csv"),
      "--out",
      out,
    ]);
    expect(written).toEqual([out, path.join(tmp, "cesaro.json")]);
    expect(fs.readFileSync(out, "utf8")).toContain("</svg>");
    const side = JSON.parse(fs.readFileSync(written[1], "utf8"));
    expect(side.kind).toBe("cesaro_decay");
    const src = fs.readFileSync(path.join(FIXTURES, "cesaro.csv"), "utf8").trim().split("\n");
    const header = src[0].split(",");
    for (const s of side.series) {
      const col = header.indexOf(s.name);
      expect(s.y).toEqual(src.slice(1).map((line) => Number(line.split(",")[col])));
    }
  });

  it("is byte-identical across runs", () => {
    const args = (out: string) => [
      "report",
      "--kind",
      "kbsz_bars",
      "--in",
      path.join(FIXTURES, "kbsz.json"),
      "--out",
      out,
    ];
    const a = path.join(tmp, "a.svg");
    const b = path.join(tmp, "b.svg");
    runReport(args(a));
    runReport(args(b));
    expect(fs.readFileSync(a)).toEqual(fs.readFileSync(b));
    expect(fs.readFileSync(sidecarPath(a))).toEqual(fs.readFileSync(sidecarPath(b)));
  });

  it("rejects bad usage", () => {
    expect(() => runReport(["plot"])).toThrow(/unknown command/);
    expect(() => runReport(["report", "--kind", "cesaro_decay"])).toThrow(/required/);
    expect(() =>
      runReport(["report", "--kind", "nope", "--in", "x", "--out", "y"]),
    ).toThrow(/unknown kind/);
    expect(() =>
      runReport([
        "report",
        "--kind",
        "cesaro_decay",
        "--in",
        path.join(FIXTURES, "cesaro.csv"),
        "--out",
        path.join(tmp, "z.svg"),
        "--eps",
        "x",
      ]),
    ).toThrow(/bad --eps/);
  });
});

describe("main", () => {
  it("returns 0 on success and 2 on error", () => {
    expect(
      main([
        "report",
        "--kind",
        "geometric_partial",
        "--in",
        path.join(FIXTURES, "geom.csv"),
        "--out",
        path.join(tmp, "geom.svg"),
      ]),
    ).toBe(0);
    expect(main(["report", "--kind", "nope", "--in", "x", "--out", "y"])).toBe(2);
    expect(main(["report", "--kind", "cesaro_decay", "--in", "/no/such/file", "--out", "y"])).toBe(2);
  });
});
