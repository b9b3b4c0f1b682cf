/**
 * Plot pipeline: read an experiment CSV, aggregate it, render SVG,
 * write the image. Never recomputes solver math; every number plotted
 * comes from the CSV.
 */

import { readFileSync, writeFileSync } from "fs";

import { SchemaError, parseCsv } from "./csv.js";
import { ChartData, FigureKind, Stat, XAxis, fig1Chart,
  trajectoryChart } from "./data.js";
import { renderSvg } from "./svg.js";

export interface PlotSpec {
  input: string;
  kind: FigureKind;
  output: string;
  logy?: boolean;
  stat?: Stat;
  x?: XAxis;
}

export interface RenderSummary {
  output: string;
  seriesCount: number;
  legendLabels: string[];
}

const TITLES: Record<FigureKind, string> = {
  fig1: "Contraction coefficients vs measurements",
  fig2: "TRK vs MRK at equal measurement memory",
  fig3: "TRK vs MRK on the unfolded system",
  fig4: "TRK vs block MRK with decay bounds",
};

export function render(spec: PlotSpec): RenderSummary {
  const table = parseCsv(readFileSync(spec.input, "utf8"));
  let chart: ChartData;
  if (spec.kind === "fig1") {
    chart = fig1Chart(table, spec.kind);
  } else {
    chart = trajectoryChart(table, spec.kind, spec.stat ?? "median",
      spec.x ?? "iteration");
  }
  const svg = renderSvg({
    title: TITLES[spec.kind],
    xLabel: chart.xLabel,
    yLabel: chart.yLabel,
    series: chart.series,
    logy: spec.logy ?? false,
  });
  writeFileSync(spec.output, svg + "\n");
  return {
    output: spec.output,
    seriesCount: chart.series.length,
    legendLabels: chart.series.map((s) => s.label),
  };
}

export { SchemaError };
