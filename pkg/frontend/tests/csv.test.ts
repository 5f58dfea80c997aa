import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { CsvFormatError, parseResultCsv, REQUIRED_COLUMNS } from "../src/csv.js";

const here = dirname(fileURLToPath(import.meta.url));
const fixture = (name: string) =>
  readFileSync(join(here, "..", "testdata", name), "utf-8");

describe("parseResultCsv", () => {
  it("parses a harness-produced table", () => {
    const rows = parseResultCsv(fixture("offline_q.csv"));
    expect(rows.length).toBe(30);
    const first = rows[0];
    expect(first.scheme).toBe("upper_bound");
    expect(first.sweepName).toBe("eap_power_mw");
    expect(first.sweepValue).toBe(10);
    expect(first.meanRate).toBeGreaterThan(0);
    expect(first.realizations).toBe(4);
  });

  it("accepts a header-only table as zero rows", () => {
    const rows = parseResultCsv(REQUIRED_COLUMNS.join(",") + "\n");
    expect(rows).toEqual([]);
  });

  it.each(REQUIRED_COLUMNS)("names the missing column %s", (column) => {
    const header = REQUIRED_COLUMNS.filter((c) => c !== column).join(",");
    expect(() => parseResultCsv(header + "\n")).toThrowError(
      new RegExp(`missing required column "${column}"`),
    );
  });

  it("rejects non-numeric fields with the line number", () => {
    const text =
      REQUIRED_COLUMNS.join(",") + "\nott_dynamic,window_size,3,not-a-number,0,4,1\n";
    expect(() => parseResultCsv(text)).toThrowError(/line 2.*mean_rate_bpshz/);
  });

  it("rejects an empty file", () => {
    expect(() => parseResultCsv("")).toThrowError(CsvFormatError);
  });

  it("rejects short rows", () => {
    const text = REQUIRED_COLUMNS.join(",") + "\na,b,1\n";
    expect(() => parseResultCsv(text)).toThrowError(/expected 7 fields/);
  });
});
