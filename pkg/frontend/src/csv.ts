/**
 * Parser for the harness result tables.
 *
 * Schema (comma-separated, LF, UTF-8):
 *   scheme,sweep_name,sweep_value,mean_rate_bpshz,std_rate,realizations,seed
 */

export interface ResultRow {
  scheme: string;
  sweepName: string;
  sweepValue: number;
  meanRate: number;
  stdRate: number;
  realizations: number;
  seed: number;
}

export const REQUIRED_COLUMNS = [
  "scheme",
  "sweep_name",
  "sweep_value",
  "mean_rate_bpshz",
  "std_rate",
  "realizations",
  "seed",
] as const;

export class CsvFormatError extends Error {}

function parseNumber(raw: string, column: string, line: number): number {
  const value = Number(raw);
  if (raw.trim() === "" || Number.isNaN(value)) {
    throw new CsvFormatError(
      `line ${line}: column "${column}" holds ${JSON.stringify(raw)}, expected a number`,
    );
  }
  return value;
}

/** Parse a result table, reporting any missing required column by name. */
export function parseResultCsv(text: string): ResultRow[] {
  const lines = text.split("\n").filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new CsvFormatError("empty file: expected a header row");
  }
  const header = lines[0].split(",").map((c) => c.trim());
  const index = new Map<string, number>();
  header.forEach((name, i) => index.set(name, i));
  for (const column of REQUIRED_COLUMNS) {
    if (!index.has(column)) {
      throw new CsvFormatError(`missing required column "${column}"`);
    }
  }

  const rows: ResultRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length < header.length) {
      throw new CsvFormatError(
        `line ${i + 1}: expected ${header.length} fields, got ${fields.length}`,
      );
    }
    const at = (column: string) => fields[index.get(column)!];
    rows.push({
      scheme: at("scheme").trim(),
      sweepName: at("sweep_name").trim(),
      sweepValue: parseNumber(at("sweep_value"), "sweep_value", i + 1),
      meanRate: parseNumber(at("mean_rate_bpshz"), "mean_rate_bpshz", i + 1),
      stdRate: parseNumber(at("std_rate"), "std_rate", i + 1),
      realizations: parseNumber(at("realizations"), "realizations", i + 1),
      seed: parseNumber(at("seed"), "seed", i + 1),
    });
  }
  return rows;
}
