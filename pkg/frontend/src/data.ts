/**
 * Turns a parsed experiment CSV into plottable series: one series per
 * method, aggregated across trials (median with interquartile band, or
 * mean), or the two rate curves of a fig1 sweep.
 */

import { SchemaError, Table, requireColumns, toNumber } from "./csv.js";

export type FigureKind = "fig1" | "fig2" | "fig3" | "fig4";
export type Stat = "median" | "mean";
export type XAxis = "iteration" | "time";

export interface Series {
  label: string;
  dashed: boolean;
  x: number[];
  y: number[];
  /** Interquartile band (present only for median aggregation of >1 trial). */
  bandLow?: number[];
  bandHigh?: number[];
}

export interface ChartData {
  series: Series[];
  xLabel: string;
  yLabel: string;
}

const TRAJECTORY_COLUMNS = [
  "experiment",
  "trial",
  "method",
  "iteration",
  "rel_error",
  "residual",
  "cum_time_ns",
];

const FIG1_COLUMNS = ["experiment", "m", "rho_trk", "rho_mrk"];

const METHOD_LABELS: Record<string, string> = {
  trk: "TRK",
  mrk: "MRK",
  brk: "BRK",
  trk_ub: "TRK-UB",
  brk_ub: "BRK-UB",
};

function quantile(sorted: number[], p: number): number {
  if (sorted.length === 1) return sorted[0];
  const pos = p * (sorted.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  const frac = pos - lo;
  return sorted[lo] * (1 - frac) + sorted[hi] * frac;
}

function checkExperiment(table: Table, kind: FigureKind): void {
  const column = table.header.indexOf("experiment");
  for (const row of table.rows) {
    if (row[column] !== kind) {
      throw new SchemaError(
        `CSV holds experiment "${row[column]}" but kind "${kind}" was requested`,
      );
    }
  }
}

export function fig1Chart(table: Table, kind: FigureKind): ChartData {
  requireColumns(table, FIG1_COLUMNS);
  checkExperiment(table, kind);
  const m: number[] = [];
  const trk: number[] = [];
  const mrk: number[] = [];
  for (const row of table.rows) {
    m.push(toNumber(row[1], "m"));
    trk.push(toNumber(row[2], "rho_trk"));
    mrk.push(toNumber(row[3], "rho_mrk"));
  }
  return {
    xLabel: "measurements m",
    yLabel: "contraction coefficient",
    series: [
      { label: "TRK", dashed: false, x: m, y: trk },
      { label: "MRK", dashed: false, x: m, y: mrk },
    ],
  };
}

export function trajectoryChart(
  table: Table,
  kind: FigureKind,
  stat: Stat,
  xAxis: XAxis,
): ChartData {
  requireColumns(table, TRAJECTORY_COLUMNS);
  checkExperiment(table, kind);

  // method -> iteration -> per-trial samples
  const methods = new Map<string, Map<number, { y: number[]; t: number[] }>>();
  for (const row of table.rows) {
    const method = row[2];
    const iteration = toNumber(row[3], "iteration");
    const relError = toNumber(row[4], "rel_error");
    const timeNs = toNumber(row[6], "cum_time_ns");
    let byIteration = methods.get(method);
    if (!byIteration) {
      byIteration = new Map();
      methods.set(method, byIteration);
    }
    let bucket = byIteration.get(iteration);
    if (!bucket) {
      bucket = { y: [], t: [] };
      byIteration.set(iteration, bucket);
    }
    bucket.y.push(relError);
    bucket.t.push(timeNs);
  }

  const series: Series[] = [];
  for (const [method, byIteration] of methods) {
    const dashed = method.endsWith("_ub");
    if (dashed && xAxis === "time") continue; // bounds carry no clock
    const label = METHOD_LABELS[method] ?? method;
    const iterations = [...byIteration.keys()].sort((a, b) => a - b);
    const x: number[] = [];
    const y: number[] = [];
    const bandLow: number[] = [];
    const bandHigh: number[] = [];
    let trialCount = 1;
    for (const iteration of iterations) {
      const bucket = byIteration.get(iteration)!;
      const ys = [...bucket.y].sort((a, b) => a - b);
      trialCount = Math.max(trialCount, ys.length);
      const center = stat === "mean"
        ? ys.reduce((sum, v) => sum + v, 0) / ys.length
        : quantile(ys, 0.5);
      const ts = [...bucket.t].sort((a, b) => a - b);
      x.push(xAxis === "time" ? quantile(ts, 0.5) / 1e9 : iteration);
      y.push(center);
      bandLow.push(quantile(ys, 0.25));
      bandHigh.push(quantile(ys, 0.75));
    }
    const entry: Series = { label, dashed, x, y };
    if (stat === "median" && trialCount > 1 && !dashed) {
      entry.bandLow = bandLow;
      entry.bandHigh = bandHigh;
    }
    series.push(entry);
  }
  if (series.length === 0) {
    throw new SchemaError("no series found in CSV");
  }
  // stable order: solvers first, bounds last, alphabetical within
  series.sort((a, b) =>
    Number(a.label.endsWith("-UB")) - Number(b.label.endsWith("-UB"))
    || a.label.localeCompare(b.label));
  return {
    series,
    xLabel: xAxis === "time" ? "solver time (s)" : "iteration",
    yLabel: "relative error",
  };
}
