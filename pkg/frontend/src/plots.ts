/** The four report figures, all built from emitted artifacts only.  Nothing
 * here recomputes mathematics; the sidecar carries the plotted values
 * unmodified for diffing against the source files. */

import { CsvTable, numericColumn, parseCsv } from "./csv.js";
import * as svg from "./svg.js";

export type PlotKind = "cesaro_decay" | "davenport_decay" | "geometric_partial" | "kbsz_bars";

export const PLOT_KINDS: PlotKind[] = [
  "cesaro_decay",
  "davenport_decay",
  "geometric_partial",
  "kbsz_bars",
];

export interface PlotSpec {
  kind: PlotKind;
  input: string; // raw file contents
  source?: string; // path, for error messages
  eps?: number[]; // subset of ratio exponents to draw, curve plots only
}

export interface Figure {
  svg: string;
  sidecar: {
    kind: PlotKind;
    series: { name: string; x: number[]; y: number[] }[];
    threshold?: number;
  };
}

function ratioColumns(table: CsvTable, eps: number[] | undefined, source: string): string[] {
  const all = table.header.filter((h) => h.startsWith("ratio_eps_"));
  if (eps === undefined) {
    return all;
  }
  return eps.map((e) => {
    const name = `ratio_eps_${String(e)}`;
    if (!all.includes(name)) {
      throw new Error(`${source}: missing column ${JSON.stringify(name)}`);
    }
    return name;
  });
}

function curveSeries(
  table: CsvTable,
  xCol: string,
  yCols: string[],
  source: string,
): { name: string; x: number[]; y: number[] }[] {
  if (table.rows.length < 2) {
    throw new Error(`${source}: curve plot needs at least 2 rows, got ${table.rows.length}`);
  }
  const x = numericColumn(table, xCol, source);
  return yCols.map((name) => ({ name, x, y: numericColumn(table, name, source) }));
}

function logLinearFigure(
  title: string,
  xLabel: string,
  yLabel: string,
  series: { name: string; x: number[]; y: number[] }[],
  logX: boolean,
): string {
  const allX = series.flatMap((s) => s.x);
  const allY = series.flatMap((s) => s.y);
  const xs = (logX ? svg.logScale : svg.linearScale)(
    Math.min(...allX),
    Math.max(...allX),
    svg.MARGIN.left,
    svg.WIDTH - svg.MARGIN.right,
  );
  const ys = svg.linearScale(
    Math.min(0, ...allY),
    Math.max(...allY),
    svg.HEIGHT - svg.MARGIN.bottom,
    svg.MARGIN.top,
  );
  const body = [
    svg.axes(xs, ys, xLabel, yLabel),
    ...series.map((s, i) => svg.polyline(xs, ys, s, svg.seriesColor(i))),
    svg.legend(series.map((s) => s.name)),
  ].join("\n");
  return svg.document(title, body);
}

function renderCesaro(spec: PlotSpec): Figure {
  const source = spec.source ?? "<input>";
  const table = parseCsv(spec.input, source);
  const cols = ["D", ...ratioColumns(table, spec.eps, source)];
  const series = curveSeries(table, "N", cols, source);
  return {
    svg: logLinearFigure("Cesaro mean decay", "N", "D(N) and fitted ratios", series, true),
    sidecar: { kind: "cesaro_decay", series },
  };
}

function renderDavenport(spec: PlotSpec): Figure {
  const source = spec.source ?? "<input>";
  const table = parseCsv(spec.input, source);
  const cols = ["sup_norm", ...ratioColumns(table, spec.eps, source)];
  const series = curveSeries(table, "N", cols, source);
  return {
    svg: logLinearFigure(
      "Exponential sum sup-norm decay",
      "N",
      "certified sup / N and fitted ratios",
      series,
      true,
    ),
    sidecar: { kind: "davenport_decay", series },
  };
}

function renderGeometric(spec: PlotSpec): Figure {
  const source = spec.source ?? "<input>";
  const table = parseCsv(spec.input, source);
  const series = curveSeries(table, "m", ["D", "partial_sum"], source);
  return {
    svg: logLinearFigure(
      "Geometric scan partial sums",
      "m",
      "D([rho^m]) and partial sum",
      series,
      false,
    ),
    sidecar: { kind: "geometric_partial", series },
  };
}

interface KbszFile {
  epsilon: number;
  pairs: { p: number; q: number; sup_lower: number; sup_upper: number }[];
}

function renderKbsz(spec: PlotSpec): Figure {
  const source = spec.source ?? "<input>";
  let data: KbszFile;
  try {
    data = JSON.parse(spec.input) as KbszFile;
  } catch (e) {
    throw new Error(`${source}: bad JSON: ${(e as Error).message}`);
  }
  if (typeof data.epsilon !== "number" || !Array.isArray(data.pairs)) {
    throw new Error(`${source}: missing "epsilon" or "pairs"`);
  }
  if (data.pairs.length === 0) {
    throw new Error(`${source}: empty input (no prime pairs)`);
  }
  const n = data.pairs.length;
  const labels = data.pairs.map((r) => `${r.p},${r.q}`);
  const ys = data.pairs.map((r) => r.sup_upper);
  const series = [{ name: "sup_upper", x: data.pairs.map((_, i) => i), y: ys }];

  const x0 = svg.MARGIN.left;
  const x1 = svg.WIDTH - svg.MARGIN.right;
  const yScale = svg.linearScale(
    0,
    Math.max(...ys, data.epsilon),
    svg.HEIGHT - svg.MARGIN.bottom,
    svg.MARGIN.top,
  );
  const band = (x1 - x0) / n;
  const parts: string[] = [svg.axes(svg.linearScale(0, n, x0, x1), yScale, "prime pair", "sup")];
  for (let i = 0; i < n; i++) {
    const bx = x0 + i * band + band * 0.15;
    const by = yScale(ys[i]);
    const h = svg.HEIGHT - svg.MARGIN.bottom - by;
    parts.push(
      `<rect x="${bx.toFixed(2)}" y="${by.toFixed(2)}" width="${(band * 0.7).toFixed(2)}" height="${h.toFixed(2)}" fill="${svg.seriesColor(0)}"/>`,
    );
    parts.push(
      `<text x="${(bx + band * 0.35).toFixed(2)}" y="${svg.HEIGHT - svg.MARGIN.bottom + 18}" font-size="10" text-anchor="middle">${labels[i]}</text>`,
    );
  }
  const ty = yScale(data.epsilon).toFixed(2);
  parts.push(
    `<line x1="${x0}" y1="${ty}" x2="${x1}" y2="${ty}" stroke="#d62728" stroke-dasharray="5,3"/>`,
  );
  parts.push(
    `<text x="${x1 - 4}" y="${(Number(ty) - 5).toFixed(2)}" font-size="11" text-anchor="end" fill="#d62728">epsilon = ${data.epsilon}</text>`,
  );
  return {
    svg: svg.document("Prime-pair criterion sups", parts.join("\n")),
    sidecar: { kind: "kbsz_bars", series, threshold: data.epsilon },
  };
}

export function render(spec: PlotSpec): Figure {
  switch (spec.kind) {
    case "cesaro_decay":
      return renderCesaro(spec);
    case "davenport_decay":
      return renderDavenport(spec);
    case "geometric_partial":
      return renderGeometric(spec);
    case "kbsz_bars":
      return renderKbsz(spec);
    default:
      throw new Error(`unknown plot kind ${JSON.stringify(spec.kind)}`);
  }
}
