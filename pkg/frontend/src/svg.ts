/**
 * Dependency-free SVG line chart: linear or log-10 y axis, shaded bands,
 * dashed series, and a legend whose entries carry class "legend-label"
 * so tooling can count them.
 */

import { Series } from "./data.js";

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  logy: boolean;
  width?: number;
  height?: number;
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b"];

const MARGIN = { top: 48, right: 24, bottom: 56, left: 76 };

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function niceStep(span: number): number {
  const raw = span / 4;
  const magnitude = Math.pow(10, Math.floor(Math.log10(raw)));
  const scaled = raw / magnitude;
  const step = scaled >= 5 ? 10 : scaled >= 2 ? 5 : scaled >= 1 ? 2 : 1;
  return step * magnitude;
}

function linearTicks(lo: number, hi: number): number[] {
  if (hi <= lo) return [lo];
  const step = niceStep(hi - lo);
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12; v += step) {
    ticks.push(v);
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const first = Math.ceil(Math.log10(lo));
  const last = Math.floor(Math.log10(hi));
  const stride = Math.max(1, Math.ceil((last - first + 1) / 8));
  const ticks: number[] = [];
  for (let e = first; e <= last; e += stride) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length > 0 ? ticks : [lo];
}

function formatTick(value: number, log: boolean): string {
  if (log) return value.toExponential(0).replace("+", "");
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e4 || abs < 1e-3) return value.toExponential(1);
  return String(Number(value.toPrecision(4)));
}

export function renderSvg(options: ChartOptions): string {
  const width = options.width ?? 760;
  const height = options.height ?? 480;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const xs = options.series.flatMap((s) => s.x);
  let ys = options.series.flatMap((s) =>
    [...s.y, ...(s.bandLow ?? []), ...(s.bandHigh ?? [])]);
  ys = ys.filter((v) => Number.isFinite(v));
  let floor = 0;
  if (options.logy) {
    const positive = ys.filter((v) => v > 0);
    floor = positive.length > 0 ? Math.min(...positive) / 2 : 1e-16;
    ys = ys.map((v) => (v > 0 ? v : floor));
  }
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = Math.min(...ys);
  const yHi = Math.max(...ys);

  const sx = (v: number): number =>
    MARGIN.left + (xHi === xLo ? 0.5 : (v - xLo) / (xHi - xLo)) * plotW;
  const sy = (v: number): number => {
    let t: number;
    if (options.logy) {
      const clamped = v > 0 ? v : floor;
      t = yHi === yLo ? 0.5
        : (Math.log10(clamped) - Math.log10(yLo))
          / (Math.log10(yHi) - Math.log10(yLo));
    } else {
      t = yHi === yLo ? 0.5 : (v - yLo) / (yHi - yLo);
    }
    return MARGIN.top + (1 - t) * plotH;
  };

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}">`);
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(`<text class="title" x="${width / 2}" y="24" ` +
    `text-anchor="middle" font-size="16">${escapeXml(options.title)}</text>`);

  // axes
  const x0 = MARGIN.left;
  const y0 = MARGIN.top + plotH;
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0 + plotW}" y2="${y0}" ` +
    `stroke="black"/>`);
  parts.push(`<line x1="${x0}" y1="${MARGIN.top}" x2="${x0}" y2="${y0}" ` +
    `stroke="black"/>`);
  for (const tick of linearTicks(xLo, xHi)) {
    const px = sx(tick);
    parts.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" ` +
      `stroke="black"/>`);
    parts.push(`<text class="x-tick" x="${px}" y="${y0 + 20}" ` +
      `text-anchor="middle" font-size="11">${formatTick(tick, false)}</text>`);
  }
  const yTicks = options.logy ? logTicks(yLo, yHi) : linearTicks(yLo, yHi);
  for (const tick of yTicks) {
    const py = sy(tick);
    parts.push(`<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" ` +
      `stroke="black"/>`);
    parts.push(`<text class="y-tick" x="${x0 - 8}" y="${py + 4}" ` +
      `text-anchor="end" font-size="11">` +
      `${formatTick(tick, options.logy)}</text>`);
  }
  parts.push(`<text class="x-label" x="${x0 + plotW / 2}" ` +
    `y="${height - 12}" text-anchor="middle" font-size="13">` +
    `${escapeXml(options.xLabel)}</text>`);
  parts.push(`<text class="y-label" x="18" y="${MARGIN.top + plotH / 2}" ` +
    `text-anchor="middle" font-size="13" transform="rotate(-90 18 ` +
    `${MARGIN.top + plotH / 2})">${escapeXml(options.yLabel)}</text>`);

  // bands beneath the lines
  options.series.forEach((series, index) => {
    if (!series.bandLow || !series.bandHigh) return;
    const color = PALETTE[index % PALETTE.length];
    const forward = series.x.map((v, i) =>
      `${sx(v)},${sy(series.bandHigh![i])}`);
    const backward = [...series.x.keys()].reverse().map((i) =>
      `${sx(series.x[i])},${sy(series.bandLow![i])}`);
    parts.push(`<path class="series-band" d="M ${forward.join(" L ")} ` +
      `L ${backward.join(" L ")} Z" fill="${color}" fill-opacity="0.15" ` +
      `stroke="none"/>`);
  });

  options.series.forEach((series, index) => {
    const color = PALETTE[index % PALETTE.length];
    const points = series.x.map((v, i) => `${sx(v)},${sy(series.y[i])}`)
      .join(" ");
    const dash = series.dashed ? ` stroke-dasharray="8 5"` : "";
    parts.push(`<polyline class="series-line" fill="none" ` +
      `stroke="${color}" stroke-width="2"${dash} points="${points}"/>`);
  });

  // legend, top right inside the plot area
  const legendX = x0 + plotW - 150;
  parts.push(`<g class="legend">`);
  options.series.forEach((series, index) => {
    const color = PALETTE[index % PALETTE.length];
    const py = MARGIN.top + 12 + index * 20;
    const dash = series.dashed ? ` stroke-dasharray="8 5"` : "";
    parts.push(`<line x1="${legendX}" y1="${py}" x2="${legendX + 28}" ` +
      `y2="${py}" stroke="${color}" stroke-width="2"${dash}/>`);
    parts.push(`<text class="legend-label" x="${legendX + 34}" ` +
      `y="${py + 4}" font-size="12">${escapeXml(series.label)}</text>`);
  });
  parts.push(`</g>`);
  parts.push(`</svg>`);
  return parts.join("\n");
}
