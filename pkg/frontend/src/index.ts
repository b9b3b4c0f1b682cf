export { parseCsv, SchemaError } from "./csv.js";
export type { Table } from "./csv.js";
export { fig1Chart, trajectoryChart } from "./data.js";
export type { ChartData, FigureKind, Series, Stat, XAxis } from "./data.js";
export { renderSvg } from "./svg.js";
export type { ChartOptions } from "./svg.js";
export { render } from "./render.js";
export type { PlotSpec, RenderSummary } from "./render.js";
