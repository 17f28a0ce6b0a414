/** Strict CSV reading for the primary component's artifacts: one header row,
 * fixed column order, plain numeric cells, no quoting. */

export interface CsvTable {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string, source = "<input>"): CsvTable {
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) {
    throw new Error(`${source}: empty input`);
  }
  const header = lines[0].split(",");
  const rows: string[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new Error(
        `${source}: row ${i + 1} has ${cells.length} fields, header has ${header.length}`,
      );
    }
    rows.push(cells);
  }
  return { header, rows };
}

export function columnIndex(table: CsvTable, name: string, source = "<input>"): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`${source}: missing column ${JSON.stringify(name)}`);
  }
  return idx;
}

/** Numeric column; a non-numeric cell is reported with its 1-based file row. */
export function numericColumn(table: CsvTable, name: string, source = "<input>"): number[] {
  const idx = columnIndex(table, name, source);
  return table.rows.map((row, i) => {
    const v = Number(row[idx]);
    if (!Number.isFinite(v)) {
      throw new Error(
        `${source}: row ${i + 2} column ${JSON.stringify(name)}: bad number ${JSON.stringify(row[idx])}`,
      );
    }
    return v;
  });
}
