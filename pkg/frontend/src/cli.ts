#!/usr/bin/env node
/**
 * plots --kind fig4 --in fig4.csv --out fig4.svg [--logy]
 *       [--stat median|mean] [--x iteration|time]
 *
 * Exit codes: 0 success, 1 runtime/schema errors, 2 bad flags.
 */

import { pathToFileURL } from "url";

import { FigureKind, Stat, XAxis } from "./data.js";
import { PlotSpec, SchemaError, render } from "./render.js";

const USAGE = "usage: plots --kind {fig1,fig2,fig3,fig4} --in <csv> " +
  "--out <svg> [--logy] [--stat {median,mean}] [--x {iteration,time}]";

const KINDS = new Set(["fig1", "fig2", "fig3", "fig4"]);
const STATS = new Set(["median", "mean"]);
const X_AXES = new Set(["iteration", "time"]);

class UsageError extends Error {}

function parseArgs(argv: string[]): PlotSpec {
  let kind: string | undefined;
  let input: string | undefined;
  let output: string | undefined;
  let logy = false;
  let stat = "median";
  let x = "iteration";

  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const next = (): string => {
      if (i + 1 >= argv.length) throw new UsageError(`${flag} needs a value`);
      return argv[++i];
    };
    switch (flag) {
      case "--kind": kind = next(); break;
      case "--in": input = next(); break;
      case "--out": output = next(); break;
      case "--logy": logy = true; break;
      case "--stat": stat = next(); break;
      case "--x": x = next(); break;
      case "--help": case "-h": throw new UsageError("");
      default: throw new UsageError(`unknown flag ${flag}`);
    }
  }
  if (!kind || !input || !output) {
    throw new UsageError("--kind, --in and --out are required");
  }
  if (!KINDS.has(kind)) throw new UsageError(`unknown kind ${kind}`);
  if (!STATS.has(stat)) throw new UsageError(`unknown stat ${stat}`);
  if (!X_AXES.has(x)) throw new UsageError(`unknown x axis ${x}`);
  return {
    kind: kind as FigureKind,
    input,
    output,
    logy,
    stat: stat as Stat,
    x: x as XAxis,
  };
}

export function main(argv: string[]): number {
  let spec: PlotSpec;
  try {
    spec = parseArgs(argv);
  } catch (error) {
    if (error instanceof UsageError) {
      if (error.message) console.error(`error: ${error.message}`);
      console.error(USAGE);
      return 2;
    }
    throw error;
  }
  try {
    const summary = render(spec);
    console.log(`wrote ${summary.output}: ${summary.seriesCount} series ` +
      `(${summary.legendLabels.join(", ")})`);
    return 0;
  } catch (error) {
    const reason = error instanceof SchemaError ? `schema error: ` : `error: `;
    console.error(reason + (error as Error).message);
    return 1;
  }
}

if (process.argv[1]
    && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
