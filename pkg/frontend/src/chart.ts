/**
 * Scaling-chart model and SVG rendering.
 *
 * One polyline per group (algorithm or distribution), x = n on a log
 * scale, y = metric per element.  The SVG is assembled from sorted
 * inputs with fixed formatting, so identical CSV input yields a
 * byte-identical image.
 */

import type { BenchRow, GroupKey, Metric } from "./csv.js";

export interface Series {
  label: string;
  points: { n: number; perElement: number }[];
}

const PALETTE = ["#1f6fb2", "#d1495b", "#3a9d6c", "#8d6bb8", "#c98a2b", "#4a4a4a"];

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 48, right: 32, bottom: 56, left: 76 };

export function buildSeries(rows: BenchRow[], metric: Metric, groupBy: GroupKey): Series[] {
  const groups = new Map<string, Map<number, number[]>>();
  for (const row of rows) {
    if (row.n === 0) continue; // per-element value undefined
    const label = row[groupBy];
    let byN = groups.get(label);
    if (byN === undefined) {
      byN = new Map();
      groups.set(label, byN);
    }
    const bucket = byN.get(row.n);
    if (bucket === undefined) {
      byN.set(row.n, [row[metric] / row.n]);
    } else {
      bucket.push(row[metric] / row.n);
    }
  }
  return [...groups.keys()].sort().map((label) => {
    const byN = groups.get(label)!;
    const points = [...byN.keys()]
      .sort((a, b) => a - b)
      .map((n) => {
        const values = byN.get(n)!;
        const mean = values.reduce((acc, v) => acc + v, 0) / values.length;
        return { n, perElement: mean };
      });
    return { label, points };
  });
}

function fmt(value: number): string {
  return Number(value.toFixed(3)).toString();
}

function niceTicks(max: number, count: number): number[] {
  if (max <= 0) return [0, 1];
  const rawStep = max / count;
  const magnitude = 10 ** Math.floor(Math.log10(rawStep));
  const residual = rawStep / magnitude;
  const step = (residual > 5 ? 10 : residual > 2 ? 5 : residual > 1 ? 2 : 1) * magnitude;
  const ticks: number[] = [];
  for (let v = 0; v <= max + step * 0.5; v += step) ticks.push(Number(v.toPrecision(12)));
  return ticks;
}

function axisLabel(n: number): string {
  const lg = Math.log2(n);
  if (Number.isInteger(lg)) return `2^${lg}`;
  return n.toString();
}

export function renderScalingSvg(series: Series[], metric: Metric, groupBy: GroupKey): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const allPoints = series.flatMap((s) => s.points);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${metric} per element vs n</text>`,
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#444"/>`,
    `<text x="${WIDTH / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13">n (log scale)</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${metric} / n</text>`,
  );

  if (allPoints.length > 0) {
    const ns = allPoints.map((p) => p.n);
    let loLg = Math.log2(Math.min(...ns));
    let hiLg = Math.log2(Math.max(...ns));
    if (hiLg - loLg < 1e-9) {
      loLg -= 0.5;
      hiLg += 0.5;
    }
    const yMax = Math.max(...allPoints.map((p) => p.perElement));
    const yTicks = niceTicks(yMax, 5);
    const yTop = yTicks[yTicks.length - 1];
    const xPos = (n: number) =>
      MARGIN.left + ((Math.log2(n) - loLg) / (hiLg - loLg)) * plotW;
    const yPos = (v: number) => MARGIN.top + plotH - (v / yTop) * plotH;

    for (const tick of yTicks) {
      const y = yPos(tick);
      parts.push(
        `<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${MARGIN.left + plotW}" y2="${fmt(y)}" stroke="#ddd"/>`,
        `<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end" font-size="11">${fmt(tick)}</text>`,
      );
    }
    const xTicks = [...new Set(ns)].sort((a, b) => a - b);
    for (const n of xTicks) {
      const x = xPos(n);
      parts.push(
        `<line x1="${fmt(x)}" y1="${MARGIN.top + plotH}" x2="${fmt(x)}" y2="${MARGIN.top + plotH + 5}" stroke="#444"/>`,
        `<text x="${fmt(x)}" y="${MARGIN.top + plotH + 20}" text-anchor="middle" font-size="11">${axisLabel(n)}</text>`,
      );
    }
    series.forEach((s, index) => {
      const color = PALETTE[index % PALETTE.length];
      const coords = s.points
        .map((p) => `${fmt(xPos(p.n))},${fmt(yPos(p.perElement))}`)
        .join(" ");
      parts.push(
        `<polyline points="${coords}" fill="none" stroke="${color}" stroke-width="2"/>`,
      );
      for (const p of s.points) {
        parts.push(
          `<circle cx="${fmt(xPos(p.n))}" cy="${fmt(yPos(p.perElement))}" r="3" fill="${color}"/>`,
        );
      }
      const legendY = MARGIN.top + 16 + index * 18;
      parts.push(
        `<line x1="${MARGIN.left + 12}" y1="${legendY - 4}" x2="${MARGIN.left + 36}" y2="${legendY - 4}" stroke="${color}" stroke-width="2"/>`,
        `<text x="${MARGIN.left + 42}" y="${legendY}" font-size="12">${groupBy}=${s.label}</text>`,
      );
    });
  } else {
    parts.push(
      `<text x="${WIDTH / 2}" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" fill="#888">no data rows</text>`,
    );
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
