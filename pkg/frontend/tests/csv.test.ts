import { describe, expect, it } from "vitest";

import { CsvFormatError, parseResultsCsv } from "../src/csv.js";

const HEADER = "experiment,m,k,snr_db,metric,value,stderr,trials,seed";

describe("parseResultsCsv", () => {
  it("parses well-formed rows with types", () => {
    const rows = parseResultsCsv(
      `${HEADER}\nmse_fig1,128,8,-10,lmmse_analytical,0.7170578789,0,10000,7\n`,
    );
    expect(rows).toHaveLength(1);
    expect(rows[0]).toEqual({
      experiment: "mse_fig1",
      m: 128,
      k: 8,
      snr_db: -10,
      metric: "lmmse_analytical",
      value: 0.7170578789,
      stderr: 0,
      trials: 10000,
      seed: "7",
    });
  });

  it("names the missing column on a truncated header", () => {
    const truncated = "experiment,m,k,snr_db,metric,value,stderr,trials";
    expect(() => parseResultsCsv(`${truncated}\nx,1,1,0,m,1,0,1\n`)).toThrowError(
      /missing column\(s\): seed/,
    );
  });

  it("names every missing column", () => {
    expect(() => parseResultsCsv("experiment,m,k\nx,1,1\n")).toThrowError(
      /snr_db, metric, value, stderr, trials, seed/,
    );
  });

  it("rejects an empty file", () => {
    expect(() => parseResultsCsv("")).toThrowError(CsvFormatError);
  });

  it("rejects header-only input", () => {
    expect(() => parseResultsCsv(`${HEADER}\n`)).toThrowError(/no data rows/);
  });

  it("rejects non-numeric fields", () => {
    expect(() =>
      parseResultsCsv(`${HEADER}\nmse_fig1,many,8,0,x,1,0,10,7\n`),
    ).toThrowError(/field 'm' is not a number/);
  });
});
