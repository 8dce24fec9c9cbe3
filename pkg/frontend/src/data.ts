/**
 * Readers for the experiment harness outputs: the schema=1 results CSV
 * and its sibling meta JSON. No physics is recomputed here; every number
 * comes straight out of the files.
 */

import Papa from "papaparse";

export const CSV_SCHEMA_LINE = "# schema=1";

export const REQUIRED_COLUMNS = [
  "scenario",
  "N",
  "b",
  "P_dBm",
  "d_T",
  "seed",
  "snr_db_proposed_ma",
  "snr_db_fixed",
  "snr_db_upper_bound",
  "snr_db_baseline_M1",
  "snr_db_baseline_M10",
  "iterations",
] as const;

export interface ResultRow {
  scenario: string;
  N: number;
  /** phase resolution: "1".."16" for b-bit, "cont" for continuous */
  b: string;
  P_dBm: number;
  d_T: number;
  seed: number;
  snr_db_proposed_ma: number;
  snr_db_fixed: number;
  snr_db_upper_bound: number;
  snr_db_baseline_M1: number;
  snr_db_baseline_M10: number;
  iterations: number;
}

export interface Placement {
  N: number;
  d_T: number;
  near_field: boolean;
  rayleigh_distance_m: number;
}

export interface MetaFile {
  schema: number;
  scenario: string;
  rows: number;
  placements?: Placement[];
  config: Record<string, unknown>;
}

export class SchemaError extends Error {}
export class EmptyTableError extends Error {}

const NUMERIC_COLUMNS = new Set([
  "N",
  "P_dBm",
  "d_T",
  "seed",
  "snr_db_proposed_ma",
  "snr_db_fixed",
  "snr_db_upper_bound",
  "snr_db_baseline_M1",
  "snr_db_baseline_M10",
  "iterations",
]);

/** Parse a schema=1 results CSV; rejects unknown schemas and missing columns. */
export function parseResultsCsv(text: string): ResultRow[] {
  if (!text.startsWith(CSV_SCHEMA_LINE + "\n")) {
    throw new SchemaError(
      `expected first line '${CSV_SCHEMA_LINE}', got '${text.split("\n", 1)[0]}'`
    );
  }
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    comments: "#",
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  for (const column of REQUIRED_COLUMNS) {
    if (!fields.includes(column)) {
      throw new SchemaError(`missing column: ${column}`);
    }
  }
  if (parsed.errors.length > 0) {
    throw new SchemaError(`csv parse error: ${parsed.errors[0].message}`);
  }
  if (parsed.data.length === 0) {
    throw new EmptyTableError("results table has no data rows");
  }
  return parsed.data.map((raw, i) => {
    const row: Record<string, unknown> = {};
    for (const column of REQUIRED_COLUMNS) {
      const cell = raw[column];
      if (NUMERIC_COLUMNS.has(column)) {
        const value = Number(cell);
        if (!Number.isFinite(value)) {
          throw new SchemaError(`row ${i + 1}: non-numeric ${column}='${cell}'`);
        }
        row[column] = value;
      } else {
        row[column] = cell;
      }
    }
    return row as unknown as ResultRow;
  });
}

export function parseMeta(text: string): MetaFile {
  const meta = JSON.parse(text) as MetaFile;
  if (meta.schema !== 1) {
    throw new SchemaError(`unsupported meta schema: ${meta.schema}`);
  }
  return meta;
}

/** Mean of a column over rows sharing a key; keys keep first-seen order. */
export function groupMean<K extends string>(
  rows: ResultRow[],
  keyOf: (row: ResultRow) => K,
  valueOf: (row: ResultRow) => number
): Map<K, number> {
  const sums = new Map<K, { total: number; count: number }>();
  for (const row of rows) {
    const key = keyOf(row);
    const acc = sums.get(key) ?? { total: 0, count: 0 };
    acc.total += valueOf(row);
    acc.count += 1;
    sums.set(key, acc);
  }
  const means = new Map<K, number>();
  for (const [key, acc] of sums) means.set(key, acc.total / acc.count);
  return means;
}
