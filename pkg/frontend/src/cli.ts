#!/usr/bin/env node
/**
 * onebit-mimo-render render --csv <path> --figure fig1|fig2 --out <path>
 *
 * Reads a sweep CSV (never modifies it) and writes one SVG figure.
 * Exits nonzero with a message naming the problem (e.g. the missing
 * column) on malformed input.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { CsvFormatError, parseResultsCsv } from "./csv.js";
import { buildFigure, FigureKind } from "./figures.js";
import { renderSvg } from "./render.js";

const FIGURE_NAMES: Record<string, FigureKind> = {
  fig1: "fig1_mse",
  fig1_mse: "fig1_mse",
  fig2: "fig2_rate",
  fig2_rate: "fig2_rate",
};

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        csv: { type: "string" },
        figure: { type: "string" },
        out: { type: "string" },
      },
    });
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    return 1;
  }
  const { values, positionals } = parsed;
  if (positionals.length !== 1 || positionals[0] !== "render") {
    console.error("usage: render --csv <path> --figure fig1|fig2 --out <path>");
    return 1;
  }
  if (!values.csv || !values.figure || !values.out) {
    console.error("error: --csv, --figure and --out are all required");
    return 1;
  }
  const kind = FIGURE_NAMES[values.figure];
  if (!kind) {
    console.error(`error: unknown figure '${values.figure}' (want fig1 or fig2)`);
    return 1;
  }

  let text: string;
  try {
    text = readFileSync(values.csv, "utf8");
  } catch (e) {
    console.error(`error: cannot read ${values.csv}: ${(e as Error).message}`);
    return 1;
  }
  try {
    const rows = parseResultsCsv(text);
    const svg = renderSvg(buildFigure(kind, rows));
    writeFileSync(values.out, svg, "utf8");
  } catch (e) {
    if (e instanceof CsvFormatError) {
      console.error(`error: ${values.csv}: ${e.message}`);
      return 1;
    }
    throw e;
  }
  console.log(`wrote ${values.out}`);
  return 0;
}

if (import.meta.url === pathToFileURL(process.argv[1] ?? "").href) {
  process.exit(run(process.argv.slice(2)));
}
