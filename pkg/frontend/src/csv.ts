/**
 * Reader for the sortbench benchmark CSV.
 *
 * The format is fixed: a comma-separated header naming exactly the ten
 * columns below, then one row per run, decimal ASCII, newline-delimited.
 * Anything else is rejected so a stale or foreign file cannot silently
 * produce an empty chart.
 */

import fs from "node:fs";

export const CSV_COLUMNS = [
  "algo",
  "n",
  "dist",
  "seed",
  "capacity",
  "node_visits",
  "word_ops",
  "key_comparisons",
  "wall_ns",
  "verified",
] as const;

export const METRICS = ["node_visits", "word_ops", "key_comparisons"] as const;
export type Metric = (typeof METRICS)[number];

export const GROUP_KEYS = ["algo", "dist"] as const;
export type GroupKey = (typeof GROUP_KEYS)[number];

export interface BenchRow {
  algo: string;
  n: number;
  dist: string;
  seed: bigint;
  capacity: number;
  node_visits: number;
  word_ops: number;
  key_comparisons: number;
  wall_ns: number;
  verified: boolean;
}

export class CsvFormatError extends Error {}

export function parseBenchCsv(text: string): BenchRow[] {
  const lines = text.split("\n").filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new CsvFormatError("empty file: expected the sortbench header");
  }
  if (lines[0] !== CSV_COLUMNS.join(",")) {
    throw new CsvFormatError(`unrecognized header: ${lines[0]}`);
  }
  return lines.slice(1).map((line, index) => {
    const fields = line.split(",");
    if (fields.length !== CSV_COLUMNS.length) {
      throw new CsvFormatError(
        `row ${index + 1}: expected ${CSV_COLUMNS.length} fields, got ${fields.length}`,
      );
    }
    const num = (column: number): number => {
      const value = Number(fields[column]);
      if (!Number.isFinite(value) || value < 0) {
        throw new CsvFormatError(
          `row ${index + 1}: bad ${CSV_COLUMNS[column]}: ${fields[column]}`,
        );
      }
      return value;
    };
    if (fields[9] !== "true" && fields[9] !== "false") {
      throw new CsvFormatError(`row ${index + 1}: bad verified: ${fields[9]}`);
    }
    return {
      algo: fields[0],
      n: num(1),
      dist: fields[2],
      seed: BigInt(fields[3]),
      capacity: num(4),
      node_visits: num(5),
      word_ops: num(6),
      key_comparisons: num(7),
      wall_ns: num(8),
      verified: fields[9] === "true",
    };
  });
}

export function readBenchCsv(path: string): BenchRow[] {
  return parseBenchCsv(fs.readFileSync(path, "utf-8"));
}
