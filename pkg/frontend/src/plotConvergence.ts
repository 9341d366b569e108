/** Log-scale relative-error curves with the predicted-rate dotted line. */

import { writeFileSync } from "fs";
import { ConvergeData, readConverge } from "./data.js";

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { left: 64, right: 16, top: 16, bottom: 40 };
const FLOOR = 1e-300;

const PALETTE = new Map<string, string>([
  ["power", "#1f77b4"],
  ["cheb1", "#ff7f0e"],
  ["deltoid", "#2ca02c"],
  ["deltoid-dyn", "#d62728"],
]);

function color(method: string, index: number): string {
  return PALETTE.get(method) ?? ["#9467bd", "#8c564b", "#7f7f7f"][index % 3];
}

export function plotConvergence(inputPath: string, outPath: string): void {
  const data: ConvergeData = readConverge(inputPath);
  let maxIter = 1;
  let logMin = Infinity;
  let logMax = -Infinity;
  for (const rows of data.series.values()) {
    for (const row of rows) {
      maxIter = Math.max(maxIter, row.iter);
      const v = Math.log10(Math.max(row.relErr, FLOOR));
      logMin = Math.min(logMin, v);
      logMax = Math.max(logMax, v);
    }
  }
  logMin = Math.floor(logMin);
  logMax = Math.ceil(Math.max(logMax, logMin + 1));

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const xOf = (iter: number) => MARGIN.left + ((iter - 1) / Math.max(maxIter - 1, 1)) * plotW;
  const yOf = (log10v: number) =>
    MARGIN.top + ((logMax - log10v) / (logMax - logMin)) * plotH;

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
      `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
      `font-family="monospace" font-size="11">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
  ];

  // decade grid
  const decadeStep = Math.max(1, Math.ceil((logMax - logMin) / 8));
  for (let p = logMax; p >= logMin; p -= decadeStep) {
    const y = yOf(p);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y.toFixed(2)}" ` +
        `x2="${WIDTH - MARGIN.right}" y2="${y.toFixed(2)}" ` +
        `stroke="#dddddd" stroke-width="0.5"/>`,
      `<text x="${MARGIN.left - 6}" y="${(y + 3).toFixed(2)}" ` +
        `text-anchor="end">1e${p}</text>`,
    );
  }
  // x ticks
  const tickCount = 5;
  for (let k = 0; k <= tickCount; k++) {
    const iter = 1 + Math.round((k * (maxIter - 1)) / tickCount);
    const x = xOf(iter);
    parts.push(
      `<line x1="${x.toFixed(2)}" y1="${HEIGHT - MARGIN.bottom}" ` +
        `x2="${x.toFixed(2)}" y2="${HEIGHT - MARGIN.bottom + 4}" stroke="black"/>`,
      `<text x="${x.toFixed(2)}" y="${HEIGHT - MARGIN.bottom + 16}" ` +
        `text-anchor="middle">${iter}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 8}" ` +
      `text-anchor="middle">iteration</text>`,
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" ` +
      `height="${plotH}" fill="none" stroke="black" stroke-width="0.75"/>`,
  );

  // predicted asymptotic rate, when the trace metadata carries it
  const rateBase = data.meta.get("theory_rate_base");
  if (rateBase !== undefined) {
    const slope = Math.log10(Number(rateBase));
    const points: string[] = [];
    for (let iter = 1; iter <= maxIter; iter++) {
      const v = iter * slope;
      if (v < logMin) break;
      points.push(`${xOf(iter).toFixed(2)},${yOf(v).toFixed(2)}`);
    }
    if (points.length > 1) {
      parts.push(
        `<polyline points="${points.join(" ")}" fill="none" stroke="black" ` +
          `stroke-width="1" stroke-dasharray="2 4" class="theory-rate"/>`,
      );
    }
  }

  let index = 0;
  for (const [method, rows] of data.series) {
    const pts = rows
      .map((r) => `${xOf(r.iter).toFixed(2)},` +
        `${yOf(Math.log10(Math.max(r.relErr, FLOOR))).toFixed(2)}`)
      .join(" ");
    const stroke = color(method, index);
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${stroke}" ` +
        `stroke-width="1.25" class="series"/>`,
      `<text x="${WIDTH - MARGIN.right - 8}" ` +
        `y="${MARGIN.top + 16 + index * 14}" text-anchor="end" ` +
        `fill="${stroke}">${method}</text>`,
    );
    index += 1;
  }
  parts.push("</svg>");
  writeFileSync(outPath, parts.join("\n") + "\n");
}
