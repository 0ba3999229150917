/**
 * Reader for the sweep CSVs produced by the onebit-mimo CLI.
 *
 * Exact header contract:
 *   experiment,m,k,snr_db,metric,value,stderr,trials,seed
 */

import Papa from "papaparse";

export const REQUIRED_COLUMNS = [
  "experiment",
  "m",
  "k",
  "snr_db",
  "metric",
  "value",
  "stderr",
  "trials",
  "seed",
] as const;

export interface ResultRow {
  experiment: string;
  m: number;
  k: number;
  snr_db: number;
  metric: string;
  value: number;
  stderr: number;
  trials: number;
  /** kept as text: seeds are u64 and may not be safe JS integers */
  seed: string;
}

/** Raised for any violation of the CSV contract. */
export class CsvFormatError extends Error {}

function toNumber(field: string, raw: string, line: number): number {
  const v = Number(raw);
  if (raw.trim() === "" || Number.isNaN(v)) {
    throw new CsvFormatError(`line ${line}: field '${field}' is not a number: '${raw}'`);
  }
  return v;
}

export function parseResultsCsv(text: string): ResultRow[] {
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new CsvFormatError(`unparseable CSV: ${parsed.errors[0].message}`);
  }
  const records = parsed.data;
  if (records.length === 0) {
    throw new CsvFormatError("empty CSV: missing header");
  }
  const header = records[0].map((h) => h.trim());
  const missing = REQUIRED_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new CsvFormatError(`missing column(s): ${missing.join(", ")}`);
  }
  if (records.length === 1) {
    throw new CsvFormatError("empty CSV: header but no data rows");
  }
  const col = new Map(header.map((name, i) => [name, i]));
  const get = (row: string[], name: string) => row[col.get(name)!] ?? "";
  return records.slice(1).map((row, i) => {
    const line = i + 2;
    return {
      experiment: get(row, "experiment"),
      m: toNumber("m", get(row, "m"), line),
      k: toNumber("k", get(row, "k"), line),
      snr_db: toNumber("snr_db", get(row, "snr_db"), line),
      metric: get(row, "metric"),
      value: toNumber("value", get(row, "value"), line),
      stderr: toNumber("stderr", get(row, "stderr"), line),
      trials: toNumber("trials", get(row, "trials"), line),
      seed: get(row, "seed"),
    };
  });
}
