#!/usr/bin/env node
/**
 * wpcn-figures render --csv <path> --kind <offline_q|online_q|online_l> --out <path>
 */

import { readFileSync, writeFileSync } from "node:fs";

import { CsvFormatError, parseResultCsv } from "./csv.js";
import { FigureKind, renderFigure } from "./figure.js";

const KINDS: FigureKind[] = ["offline_q", "online_q", "online_l"];

export interface RenderArgs {
  csv: string;
  kind: FigureKind;
  out: string;
}

export function parseArgs(argv: string[]): RenderArgs {
  if (argv[0] !== "render") {
    throw new Error(`unknown command ${JSON.stringify(argv[0])}; expected "render"`);
  }
  const options = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new Error(`malformed option ${JSON.stringify(flag)}`);
    }
    options.set(flag.slice(2), value);
  }
  for (const required of ["csv", "kind", "out"]) {
    if (!options.has(required)) {
      throw new Error(`missing --${required}`);
    }
  }
  const kind = options.get("kind")!;
  if (!KINDS.includes(kind as FigureKind)) {
    throw new Error(`unknown kind ${JSON.stringify(kind)}; expected ${KINDS.join(" | ")}`);
  }
  return { csv: options.get("csv")!, kind: kind as FigureKind, out: options.get("out")! };
}

export function runRender(args: RenderArgs): void {
  const text = readFileSync(args.csv, "utf-8");
  const rows = parseResultCsv(text);
  const svg = renderFigure(rows, { kind: args.kind });
  writeFileSync(args.out, svg, "utf-8");
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    runRender(args);
    console.log(`wrote ${args.kind} figure to ${args.out}`);
    return 0;
  } catch (error) {
    if (error instanceof CsvFormatError || error instanceof Error) {
      console.error(`error: ${error.message}`);
      return 1;
    }
    throw error;
  }
}

// Invoked directly (not imported by tests)?
if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
