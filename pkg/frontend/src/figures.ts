/**
 * Turns sweep rows into figure series.
 *
 * fig1: estimation error vs SNR on a log axis; the closed form draws as a
 * line, the two empirical estimators as markers.
 * fig2: sum rate vs SNR; per antenna count, Monte Carlo draws as markers
 * and the closed-form bound as a line (one pair per M).
 */

import { CsvFormatError, ResultRow } from "./csv.js";

export type FigureKind = "fig1_mse" | "fig2_rate";

export interface Series {
  name: string;
  kind: "line" | "scatter";
  /** [snr_db, value] sorted by snr_db */
  points: [number, number][];
}

export interface FigureData {
  title: string;
  xLabel: string;
  yLabel: string;
  logY: boolean;
  series: Series[];
}

const FIG1_STYLES: Record<string, "line" | "scatter"> = {
  lmmse_analytical: "line",
  lmmse_empirical: "scatter",
  ls_empirical: "scatter",
};

const FIG2_STYLES: Record<string, "line" | "scatter"> = {
  ergodic_eq20: "scatter",
  theorem1_eq26: "line",
};

function sortedPoints(rows: ResultRow[]): [number, number][] {
  return rows
    .map((r): [number, number] => [r.snr_db, r.value])
    .sort((a, b) => a[0] - b[0]);
}

export function buildFig1(rows: ResultRow[]): FigureData {
  const metrics = Object.keys(FIG1_STYLES).sort();
  const missing = metrics.filter((m) => !rows.some((r) => r.metric === m));
  if (missing.length > 0) {
    throw new CsvFormatError(`fig1 needs metric(s) not in the CSV: ${missing.join(", ")}`);
  }
  const series = metrics.map((metric) => ({
    name: metric,
    kind: FIG1_STYLES[metric],
    points: sortedPoints(rows.filter((r) => r.metric === metric)),
  }));
  return {
    title: "Channel estimation error vs SNR",
    xLabel: "SNR (dB)",
    yLabel: "normalized MSE",
    logY: true,
    series,
  };
}

export function buildFig2(rows: ResultRow[]): FigureData {
  const metrics = Object.keys(FIG2_STYLES).sort();
  const missing = metrics.filter((m) => !rows.some((r) => r.metric === m));
  if (missing.length > 0) {
    throw new CsvFormatError(`fig2 needs metric(s) not in the CSV: ${missing.join(", ")}`);
  }
  const mValues = [...new Set(rows.map((r) => r.m))].sort((a, b) => a - b);
  const series: Series[] = [];
  // legend order: metric name first, then M ascending
  for (const metric of metrics) {
    for (const m of mValues) {
      const subset = rows.filter((r) => r.metric === metric && r.m === m);
      if (subset.length === 0) {
        throw new CsvFormatError(`fig2: metric '${metric}' has no rows for m=${m}`);
      }
      series.push({
        name: `${metric} M=${m}`,
        kind: FIG2_STYLES[metric],
        points: sortedPoints(subset),
      });
    }
  }
  return {
    title: "Sum rate vs SNR",
    xLabel: "SNR (dB)  (pilot and data power)",
    yLabel: "sum rate (bits/s/Hz)",
    logY: false,
    series,
  };
}

export function buildFigure(kind: FigureKind, rows: ResultRow[]): FigureData {
  return kind === "fig1_mse" ? buildFig1(rows) : buildFig2(rows);
}
