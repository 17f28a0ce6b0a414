export { parseCsv, columnIndex, numericColumn } from "./csv.js";
export { render, PLOT_KINDS } from "./plots.js";
export type { PlotKind, PlotSpec, Figure } from "./plots.js";
export { runReport, sidecarPath } from "./cli.js";
