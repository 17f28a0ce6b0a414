/** Hand-rolled SVG output.  Everything is emitted in a fixed order with fixed
 * coordinate formatting, so identical inputs give byte-identical files. */

export const WIDTH = 640;
export const HEIGHT = 400;
export const MARGIN = { left: 70, right: 20, top: 30, bottom: 45 };

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export function seriesColor(i: number): string {
  return PALETTE[i % PALETTE.length];
}

export interface Scale {
  (v: number): number;
  ticks: number[];
}

function fmt(v: number): string {
  return v.toFixed(2);
}

export function fmtTick(v: number): string {
  if (v !== 0 && (Math.abs(v) >= 1e4 || Math.abs(v) < 1e-3)) {
    return v.toExponential(0).replace("+", "");
  }
  return String(v);
}

export function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (hi === lo) {
    hi = lo + 1;
  }
  const s = ((v: number) => outLo + ((v - lo) / (hi - lo)) * (outHi - outLo)) as Scale;
  const step = (hi - lo) / 5;
  s.ticks = Array.from({ length: 6 }, (_, i) => lo + i * step);
  return s;
}

export function logScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (lo <= 0) {
    throw new Error("log scale needs positive domain");
  }
  const a = Math.log10(lo);
  const b = Math.log10(hi === lo ? lo * 10 : hi);
  const s = ((v: number) => outLo + ((Math.log10(v) - a) / (b - a)) * (outHi - outLo)) as Scale;
  const ticks: number[] = [];
  for (let e = Math.ceil(a); e <= Math.floor(b); e++) ticks.push(10 ** e);
  s.ticks = ticks.length >= 2 ? ticks : [lo, hi];
  return s;
}

export interface SvgSeries {
  name: string;
  x: number[];
  y: number[];
}

export function polyline(xs: Scale, ys: Scale, s: SvgSeries, color: string): string {
  const pts = s.x.map((v, i) => `${fmt(xs(v))},${fmt(ys(s.y[i]))}`).join(" ");
  return `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${pts}"/>`;
}

export function axes(xs: Scale, ys: Scale, xLabel: string, yLabel: string): string {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  const parts = [
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#000"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#000"/>`,
  ];
  for (const t of xs.ticks) {
    const x = fmt(xs(t));
    parts.push(`<line x1="${x}" y1="${y0}" x2="${x}" y2="${y0 + 5}" stroke="#000"/>`);
    parts.push(
      `<text x="${x}" y="${y0 + 18}" font-size="11" text-anchor="middle">${fmtTick(t)}</text>`,
    );
  }
  for (const t of ys.ticks) {
    const y = fmt(ys(t));
    parts.push(`<line x1="${x0 - 5}" y1="${y}" x2="${x0}" y2="${y}" stroke="#000"/>`);
    parts.push(
      `<text x="${x0 - 8}" y="${y}" font-size="11" text-anchor="end" dominant-baseline="middle">${fmtTick(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 8}" font-size="12" text-anchor="middle">${xLabel}</text>`,
  );
  parts.push(
    `<text x="16" y="${(y0 + y1) / 2}" font-size="12" text-anchor="middle" transform="rotate(-90 16 ${(y0 + y1) / 2})">${yLabel}</text>`,
  );
  return parts.join("\n");
}

export function legend(names: string[]): string {
  return names
    .map((name, i) => {
      const y = MARGIN.top + 14 * i;
      const x = WIDTH - MARGIN.right - 150;
      return (
        `<line x1="${x}" y1="${y}" x2="${x + 18}" y2="${y}" stroke="${seriesColor(i)}" stroke-width="2"/>` +
        `<text x="${x + 24}" y="${y + 4}" font-size="11">${name}</text>`
      );
    })
    .join("\n");
}

export function document(title: string, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">\n` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="#fff"/>\n` +
    `<text x="${WIDTH / 2}" y="18" font-size="13" text-anchor="middle">${title}</text>\n` +
    body +
    `\n</svg>\n`
  );
}
