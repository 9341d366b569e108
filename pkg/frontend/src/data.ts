/** Parsers for the CLI's raster JSON and convergence CSV formats. */

import { readFileSync } from "fs";

export interface RasterData {
  n: number;
  resolution: number;
  xmin: number;
  xmax: number;
  ymin: number;
  ymax: number;
  /** values[row][col]; row 0 is the lowest imaginary part */
  values: number[][];
}

export function readRaster(path: string): RasterData {
  const raw = JSON.parse(readFileSync(path, "utf8"));
  if (raw.kind !== "p-magnitude-raster") {
    throw new Error(`${path}: not a p-magnitude raster file`);
  }
  const values = raw.values as number[][];
  if (!Array.isArray(values) || values.length !== raw.resolution) {
    throw new Error(`${path}: values shape does not match resolution`);
  }
  for (const row of values) {
    if (row.length !== raw.resolution) {
      throw new Error(`${path}: ragged raster rows`);
    }
  }
  return {
    n: raw.n,
    resolution: raw.resolution,
    xmin: raw.xmin,
    xmax: raw.xmax,
    ymin: raw.ymin,
    ymax: raw.ymax,
    values,
  };
}

export interface ConvergeRow {
  iter: number;
  method: string;
  relErr: number;
}

export interface ConvergeData {
  meta: Map<string, string>;
  /** method name -> rows ordered by iteration */
  series: Map<string, ConvergeRow[]>;
}

export function readConverge(path: string): ConvergeData {
  const meta = new Map<string, string>();
  const lines = readFileSync(path, "utf8").split("\n");
  let headerIdx = -1;
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    if (line.startsWith("#")) {
      const eq = line.indexOf("=");
      if (eq > 0) {
        meta.set(line.slice(1, eq).trim(), line.slice(eq + 1).trim());
      }
      continue;
    }
    headerIdx = i;
    break;
  }
  if (headerIdx < 0) throw new Error(`${path}: no header row found`);
  const header = lines[headerIdx].split(",").map((h) => h.trim());
  const iterCol = header.indexOf("iter");
  const methodCol = header.indexOf("method");
  const relErrCol = header.indexOf("rel_err");
  for (const [name, idx] of [["iter", iterCol], ["method", methodCol],
                             ["rel_err", relErrCol]] as const) {
    if (idx < 0) throw new Error(`${path}: missing required column: ${name}`);
  }
  const series = new Map<string, ConvergeRow[]>();
  for (let i = headerIdx + 1; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    const parts = line.split(",");
    if (parts.length !== header.length) {
      throw new Error(`${path}: malformed row ${i + 1}`);
    }
    const row: ConvergeRow = {
      iter: Number(parts[iterCol]),
      method: parts[methodCol],
      relErr: Number(parts[relErrCol]),
    };
    if (!Number.isFinite(row.iter) || !Number.isFinite(row.relErr)) {
      throw new Error(`${path}: non-numeric data in row ${i + 1}`);
    }
    const bucket = series.get(row.method) ?? [];
    bucket.push(row);
    series.set(row.method, bucket);
  }
  if (series.size === 0) throw new Error(`${path}: no data rows`);
  return { meta, series };
}
