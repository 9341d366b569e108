/** Grayscale magnitude panels: black at |P| <= 1e-3, white at |P| >= 1. */

import { writeFileSync } from "fs";
import { RasterData, readRaster } from "./data.js";
import { encodeGrayPng } from "./png.js";

const BLACK_AT = 1e-3;
const WHITE_AT = 1.0;
const PANEL = 256;
const GAP = 8;
const LABEL_BAND = 20;

export function grayLevel(value: number): number {
  if (value <= BLACK_AT) return 0;
  if (value >= WHITE_AT) return 255;
  return Math.round((255 * (value - BLACK_AT)) / (WHITE_AT - BLACK_AT));
}

function panelPng(raster: RasterData): Buffer {
  // raster rows run imag-ascending; PNG scanlines run top to bottom
  const rows: number[][] = [];
  for (let r = raster.values.length - 1; r >= 0; r--) {
    rows.push(raster.values[r].map(grayLevel));
  }
  return encodeGrayPng(rows);
}

function gammaPathData(x0: number, y0: number): string {
  const parts: string[] = [];
  for (let k = 0; k < 512; k++) {
    const t = (2 * Math.PI * k) / 512;
    const re = (2 / 3) * Math.cos(t) + (1 / 3) * Math.cos(2 * t);
    const im = (2 / 3) * Math.sin(t) - (1 / 3) * Math.sin(2 * t);
    const x = x0 + ((re + 1) / 2) * PANEL;
    const y = y0 + ((1 - im) / 2) * PANEL;
    parts.push(`${k === 0 ? "M" : "L"}${x.toFixed(3)},${y.toFixed(3)}`);
  }
  return parts.join("") + "Z";
}

export interface RegionOptions {
  overlay?: boolean;
}

/** Render one or more raster JSON files into a single SVG figure. */
export function plotRegion(inputPaths: string[], outPath: string,
                           options: RegionOptions = {}): void {
  if (inputPaths.length === 0) throw new Error("no raster files given");
  const rasters = inputPaths.map(readRaster);
  const width = rasters.length * PANEL + (rasters.length - 1) * GAP;
  const height = PANEL + LABEL_BAND;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
      `height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
  ];
  rasters.forEach((raster, i) => {
    const x0 = i * (PANEL + GAP);
    const png = panelPng(raster).toString("base64");
    parts.push(
      `<text x="${x0 + PANEL / 2}" y="${LABEL_BAND - 6}" ` +
        `text-anchor="middle" font-family="monospace" font-size="12">` +
        `n = ${raster.n}</text>`,
      `<image x="${x0}" y="${LABEL_BAND}" width="${PANEL}" height="${PANEL}" ` +
        `preserveAspectRatio="none" image-rendering="pixelated" ` +
        `href="data:image/png;base64,${png}"/>`,
      `<rect x="${x0}" y="${LABEL_BAND}" width="${PANEL}" height="${PANEL}" ` +
        `fill="none" stroke="black" stroke-width="0.5"/>`,
    );
    if (options.overlay) {
      parts.push(
        `<path d="${gammaPathData(x0, LABEL_BAND)}" fill="none" ` +
          `stroke="#d62728" stroke-width="0.8"/>`,
      );
    }
  });
  parts.push("</svg>");
  writeFileSync(outPath, parts.join("\n") + "\n");
}
