#!/usr/bin/env node
/**
 * plots: render a scaling chart from a sortbench benchmark CSV.
 *
 *   plots --csv results.csv --metric node_visits --group-by algo --out chart.svg
 *
 * Exit codes: 0 success, 1 missing/malformed CSV or write failure,
 * 2 usage error.
 */

import fs from "node:fs";

import { buildSeries, renderScalingSvg } from "./chart.js";
import {
  CsvFormatError,
  GROUP_KEYS,
  METRICS,
  readBenchCsv,
  type GroupKey,
  type Metric,
} from "./csv.js";

export interface PlotSpec {
  csvPath: string;
  outPath: string;
  metric: Metric;
  groupBy: GroupKey;
}

export class UsageError extends Error {}

export function parseArgs(argv: string[]): PlotSpec {
  const values = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new UsageError(`expected --flag value pairs, got: ${flag}`);
    }
    values.set(flag.slice(2), value);
  }
  const csvPath = values.get("csv");
  const outPath = values.get("out");
  if (csvPath === undefined || outPath === undefined) {
    throw new UsageError("--csv and --out are required");
  }
  const metric = values.get("metric") ?? "node_visits";
  if (!(METRICS as readonly string[]).includes(metric)) {
    throw new UsageError(
      `unknown metric column: ${metric} (expected ${METRICS.join("|")})`,
    );
  }
  const groupBy = values.get("group-by") ?? "algo";
  if (!(GROUP_KEYS as readonly string[]).includes(groupBy)) {
    throw new UsageError(
      `unknown group key: ${groupBy} (expected ${GROUP_KEYS.join("|")})`,
    );
  }
  for (const flag of values.keys()) {
    if (!["csv", "out", "metric", "group-by"].includes(flag)) {
      throw new UsageError(`unknown flag: --${flag}`);
    }
  }
  return { csvPath, outPath, metric: metric as Metric, groupBy: groupBy as GroupKey };
}

export function renderScaling(spec: PlotSpec): void {
  const rows = readBenchCsv(spec.csvPath);
  const series = buildSeries(rows, spec.metric, spec.groupBy);
  fs.writeFileSync(spec.outPath, renderScalingSvg(series, spec.metric, spec.groupBy));
}

export function main(argv: string[]): number {
  try {
    renderScaling(parseArgs(argv));
    return 0;
  } catch (error) {
    if (error instanceof UsageError) {
      console.error(`plots: ${error.message}`);
      return 2;
    }
    if (error instanceof CsvFormatError || isFsError(error)) {
      console.error(`plots: ${(error as Error).message}`);
      return 1;
    }
    throw error;
  }
}

function isFsError(error: unknown): boolean {
  return error instanceof Error && "code" in error;
}

if (process.argv[1] !== undefined && import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
