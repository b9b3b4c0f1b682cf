/** Generates real experiment CSVs through the solver package's CLI. */

import { execFileSync } from "child_process";
import { mkdtempSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";

export interface Fixtures {
  dir: string;
  csv: Record<string, string>;
}

const TINY_ARGS: Record<string, string[]> = {
  fig1: ["--trials", "2", "--m-sweep", "30,60"],
  fig2: ["--m", "30", "--ell", "6", "--n", "4", "--p", "3",
    "--trials", "3", "--iters", "150", "--log-stride", "25"],
  fig3: ["--m", "20", "--ell", "5", "--n", "4", "--p", "3",
    "--trials", "2", "--iters", "150", "--log-stride", "25"],
  fig4: ["--m", "20", "--ell", "6", "--n", "3", "--p", "4",
    "--trials", "3", "--iters", "120", "--log-stride", "20"],
};

export function generateFixtures(): Fixtures {
  const dir = mkdtempSync(join(tmpdir(), "kaczmarz-plots-"));
  const csv: Record<string, string> = {};
  for (const [fig, args] of Object.entries(TINY_ARGS)) {
    const out = join(dir, `${fig}.csv`);
    execFileSync("python3", [
      "-m", "tensor_kaczmarz", "run", "--experiment", fig,
      "--seed", "42", "--out", out, ...args,
    ], { stdio: "pipe" });
    csv[fig] = out;
  }
  return { dir, csv };
}
