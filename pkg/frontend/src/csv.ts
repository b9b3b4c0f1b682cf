/**
 * Minimal CSV reader for the experiment outputs: comma-separated,
 * header row, no quoting or escapes.
 */

export class SchemaError extends Error {}

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("CSV is empty");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line, index) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(
        `row ${index + 2} has ${cells.length} cells, expected ${header.length}`,
      );
    }
    return cells;
  });
  if (rows.length === 0) {
    throw new SchemaError("CSV has a header but no data rows");
  }
  return { header, rows };
}

export function requireColumns(table: Table, expected: string[]): void {
  const got = table.header.join(",");
  const want = expected.join(",");
  if (got !== want) {
    throw new SchemaError(`unexpected columns "${got}", expected "${want}"`);
  }
}

export function toNumber(cell: string, column: string): number {
  const value = Number(cell);
  if (Number.isNaN(value) && cell !== "nan") {
    throw new SchemaError(`cannot parse "${cell}" in column ${column}`);
  }
  return value;
}
